use num_traits::Zero;
use proptest::prelude::*;
use trop_theta::num::{frac, rat, Rat};
use trop_theta::oracle::vertices_by_subsets;
use trop_theta::polyhedra::{Constraint, LpResult, RationalPolyhedron};

fn c(a: &[i64], rhs: Rat) -> Constraint {
    Constraint::new(a.iter().map(|&x| rat(x)).collect(), rhs)
}

fn unit_square() -> RationalPolyhedron {
    RationalPolyhedron::cube(&[rat(0), rat(0)], &[rat(1), rat(1)])
}

#[test]
fn projecting_the_square_gives_the_segment() {
    let seg = unit_square().project_out(&[1]);
    assert_eq!(seg.ambient_dim, 1);
    assert!(seg.set_equal(&RationalPolyhedron::cube(&[rat(0)], &[rat(1)])));
    assert_eq!(seg.ineqs.len(), 2);
}

#[test]
fn shadow_of_a_triangle() {
    // y >= x, y >= -x, y <= 1
    let tri = RationalPolyhedron::from_ineqs(
        2,
        vec![
            c(&[1, -1], rat(0)),
            c(&[-1, -1], rat(0)),
            c(&[0, 1], rat(1)),
        ],
    );
    let shadow = tri.project_out(&[1]);
    assert!(shadow.set_equal(&RationalPolyhedron::cube(&[rat(-1)], &[rat(1)])));
    // agrees with projecting the vertices
    let mut xs: Vec<Rat> = tri
        .vertex_enumeration()
        .vertices
        .iter()
        .map(|v| v[0].clone())
        .collect();
    xs.sort();
    assert_eq!(xs.first(), Some(&rat(-1)));
    assert_eq!(xs.last(), Some(&rat(1)));
}

#[test]
fn projecting_empty_is_empty() {
    let p = RationalPolyhedron::from_ineqs(2, vec![c(&[1, 0], rat(0)), c(&[-1, 0], rat(-1))]);
    let q = p.project_out(&[0]);
    assert_eq!(q.ambient_dim, 1);
    assert!(q.is_empty());
    assert_eq!(q.dimension(), -1);
}

#[test]
fn projection_uses_equations() {
    // x + y = 1, 0 <= x <= 1  ->  y in [0, 1]
    let mut p = RationalPolyhedron::from_ineqs(2, vec![c(&[1, 0], rat(1)), c(&[-1, 0], rat(0))]);
    p.add_eq(vec![rat(1), rat(1)], rat(1));
    let q = p.project_out(&[0]);
    assert!(q.set_equal(&RationalPolyhedron::cube(&[rat(0)], &[rat(1)])));
}

#[test]
fn dimensions() {
    let point = RationalPolyhedron::cube(&[frac(1, 2), rat(3)], &[frac(1, 2), rat(3)]);
    assert_eq!(point.dimension(), 0);
    let empty = RationalPolyhedron::from_ineqs(1, vec![c(&[1], rat(0)), c(&[-1], rat(-1))]);
    assert_eq!(empty.dimension(), -1);
    assert_eq!(unit_square().dimension(), 2);
    let mut seg = unit_square();
    seg.add_ineq(vec![rat(1), rat(-1)], rat(0));
    seg.add_ineq(vec![rat(-1), rat(1)], rat(0));
    assert_eq!(seg.dimension(), 1);
}

#[test]
fn redundancy_examples() {
    let p = RationalPolyhedron::from_ineqs(1, vec![c(&[1], rat(1)), c(&[1], rat(2))]);
    let r = p.remove_redundancy();
    assert_eq!(r.ineqs, vec![c(&[1], rat(1))]);
    assert!(r.eqs.is_empty());

    let p = RationalPolyhedron::from_ineqs(1, vec![c(&[1], rat(1)), c(&[-1], rat(-1))]);
    let r = p.remove_redundancy();
    assert!(r.ineqs.is_empty());
    assert_eq!(r.eqs, vec![c(&[1], rat(1))]);
}

#[test]
fn vertex_examples() {
    let half = RationalPolyhedron::from_ineqs(1, vec![c(&[-1], rat(0))]);
    let v = half.vertex_enumeration();
    assert_eq!(v.vertices, vec![vec![rat(0)]]);
    assert_eq!(v.rays, vec![vec![rat(1)]]);
    let cube = RationalPolyhedron::cube(&[rat(0), rat(0), rat(0)], &[rat(1), rat(1), rat(1)]);
    assert_eq!(cube.vertex_enumeration().vertices.len(), 8);
}

#[test]
fn json_shape() {
    let p = RationalPolyhedron::from_ineqs(1, vec![c(&[2], frac(1, 3))]);
    let s = serde_json::to_string(&p).unwrap();
    assert_eq!(
        s,
        r#"{"ambient_dim":1,"ineqs":[{"a":["2"],"c":"1/3"}],"eqs":[]}"#
    );
    let back: RationalPolyhedron = serde_json::from_str(&s).unwrap();
    assert_eq!(back, p);
    let v = p.vertex_enumeration();
    let s = serde_json::to_string(&v).unwrap();
    assert_eq!(s, r#"{"vertices":[["1/6"]],"rays":[["-1"]]}"#);
}

fn random_polytope(dim: usize, rows: &[(Vec<i64>, i64)]) -> RationalPolyhedron {
    let mut p = RationalPolyhedron::cube(&vec![rat(-3); dim], &vec![rat(3); dim]);
    for (a, b) in rows {
        p.add_ineq(a[..dim].iter().map(|&x| rat(x)).collect(), frac(*b, 2));
    }
    p
}

fn rows_strategy() -> impl Strategy<Value = Vec<(Vec<i64>, i64)>> {
    proptest::collection::vec((proptest::collection::vec(-3i64..=3, 4), -2i64..=8), 0..6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn dd_matches_subset_oracle(dim in 1usize..=3, rows in rows_strategy()) {
        let p = random_polytope(dim, &rows);
        let v = p.vertex_enumeration();
        prop_assert_eq!(v.vertices, vertices_by_subsets(&p));
        prop_assert!(v.rays.is_empty());
    }

    #[test]
    fn h_to_v_round_trip(dim in 1usize..=3, rows in rows_strategy(), obj in proptest::collection::vec(-4i64..=4, 3)) {
        let p = random_polytope(dim, &rows);
        let v = p.vertex_enumeration();
        for x in &v.vertices {
            prop_assert!(p.contains(x));
        }
        let o: Vec<Rat> = obj[..dim].iter().map(|&x| rat(x)).collect();
        match p.maximize(&o) {
            LpResult::Optimal { value, .. } => {
                let best = v.vertices.iter().map(|x| trop_theta::num::dot(&o, x)).max().unwrap();
                prop_assert_eq!(value, best);
            }
            LpResult::Infeasible => prop_assert!(v.vertices.is_empty()),
            LpResult::Unbounded => prop_assert!(false, "bounded input"),
        }
    }

    #[test]
    fn redundancy_removal_preserves_the_set(rows in rows_strategy()) {
        let p = random_polytope(2, &rows);
        let r = p.remove_redundancy();
        prop_assert!(r.set_equal(&p));
        if !p.is_empty() {
            let d = p.dimension();
            prop_assert_eq!(r.dimension(), d);
            // every kept inequality is a facet
            for h in &r.ineqs {
                let mut face = r.clone();
                face.add_eq(h.a.clone(), h.c.clone());
                prop_assert_eq!(face.dimension(), d - 1);
            }
        }
    }

    #[test]
    fn projection_commutes_with_vertices(dim in 2usize..=4, rows in rows_strategy(), coord in 0usize..4) {
        let coord = coord % dim;
        let p = random_polytope(dim, &rows);
        let proj = p.project_out(&[coord]);
        let pv = p.vertex_enumeration();
        let shadow: Vec<Vec<Rat>> = pv
            .vertices
            .iter()
            .map(|x| x.iter().enumerate().filter(|(i, _)| *i != coord).map(|(_, v)| v.clone()).collect())
            .collect();
        for s in &shadow {
            prop_assert!(proj.contains(s));
        }
        for v in proj.vertex_enumeration().vertices {
            prop_assert!(shadow.contains(&v));
        }
        prop_assert_eq!(proj.is_empty(), pv.vertices.is_empty());
    }

    #[test]
    fn dimension_counts_implicit_equations(dim in 1usize..=3, rows in rows_strategy()) {
        let p = random_polytope(dim, &rows);
        let d = p.dimension();
        let v = p.vertex_enumeration();
        if v.vertices.is_empty() {
            prop_assert_eq!(d, -1);
        } else {
            // affine hull dimension of the vertices
            let base = &v.vertices[0];
            let diffs: Vec<Vec<Rat>> = v.vertices[1..]
                .iter()
                .map(|x| x.iter().zip(base).map(|(a, b)| a - b).collect())
                .collect();
            let rank = if diffs.is_empty() || diffs.iter().all(|r| r.iter().all(Zero::is_zero)) {
                0
            } else {
                trop_theta::matrix::QMatrix::from_rows(diffs).rank()
            };
            prop_assert_eq!(d, rank as i64);
        }
    }
}
