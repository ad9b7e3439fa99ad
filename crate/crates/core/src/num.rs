//! Exact number helpers shared by every module.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(v: i64) -> Int {
    Int::from(v)
}

pub fn rat(v: i64) -> Rat {
    Rat::from_integer(Int::from(v))
}

pub fn frac(p: i64, q: i64) -> Rat {
    Rat::new(Int::from(p), Int::from(q))
}

pub fn rat_from_int(v: &Int) -> Rat {
    Rat::from_integer(v.clone())
}

pub fn half() -> Rat {
    frac(1, 2)
}

/// Parses `"p/q"`, `"p"` or a plain decimal integer string.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    let r: Rat = s.parse().ok()?;
    Some(r)
}

pub fn floor(r: &Rat) -> Int {
    r.floor().to_integer()
}

pub fn ceil(r: &Rat) -> Int {
    r.ceil().to_integer()
}

pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

/// `ceil(sqrt(r))` for `r >= 0`, or a value slightly above it. Never below.
pub fn sqrt_upper(r: &Rat) -> Int {
    if !r.is_positive() {
        return Int::zero();
    }
    let c = ceil(r);
    let s = c.sqrt();
    if &s * &s == c {
        s
    } else {
        s + Int::one()
    }
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

pub fn add_vec(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vec(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_vec(s: &Rat, a: &[Rat]) -> Vec<Rat> {
    a.iter().map(|x| s * x).collect()
}

pub fn ints_to_rats(v: &[Int]) -> Vec<Rat> {
    v.iter().map(rat_from_int).collect()
}

pub fn lcm_denominators(v: &[Rat]) -> Int {
    v.iter().fold(Int::one(), |acc, x| acc.lcm(x.denom()))
}

pub fn gcd_all(v: &[Int]) -> Int {
    v.iter().fold(Int::zero(), |acc, x| acc.gcd(x))
}

/// Scales a nonzero rational vector to the primitive integer vector on the
/// same ray. Returns `None` for the zero vector.
pub fn primitive_direction(v: &[Rat]) -> Option<Vec<Int>> {
    if v.iter().all(Zero::is_zero) {
        return None;
    }
    let l = lcm_denominators(v);
    let ints: Vec<Int> = v
        .iter()
        .map(|x| (x * rat_from_int(&l)).to_integer())
        .collect();
    let g = gcd_all(&ints);
    Some(ints.into_iter().map(|x| x / &g).collect())
}

/// Lattice length of an integer vector: the gcd of its entries.
pub fn lattice_length(v: &[Int]) -> Int {
    gcd_all(v).abs()
}

/// Rescales so that the entries are coprime integers (same ray). The zero
/// vector is returned unchanged.
pub fn normalize_ray(v: &[Rat]) -> Vec<Rat> {
    match primitive_direction(v) {
        Some(p) => ints_to_rats(&p),
        None => v.to_vec(),
    }
}

pub fn to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}
