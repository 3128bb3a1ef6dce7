//! The G-Hilb triangulation of the junior simplex.
//!
//! A unimodular triangle of junior points belongs to the fan exactly when every
//! character class has a monomial that is minimal on all three of its rays; the
//! resulting G-graph is the torus-fixed cluster of that chart.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ggraph::{ConeFailure, GGraph, MinimaTable};
use crate::group::LatticeContext;
use crate::matrix::det3_i64;

#[derive(Clone, Debug)]
pub struct Triangle {
    /// Junior-point indices, ascending.
    pub vertices: [usize; 3],
    /// Rows are the vertices in the N basis.
    pub n_coordinates: [[i64; 3]; 3],
    pub ggraph: GGraph,
}

/// An interior edge shared by two triangles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Wall {
    pub endpoints: [usize; 2],
    /// Triangle indices; `sides[0]` is called sigma, `sides[1]` sigma'.
    pub sides: [usize; 2],
    /// Third vertex of each side.
    pub opposite: [usize; 2],
    /// `(alpha, beta)` with `w + w' = alpha * v1 + beta * v2`.
    pub relation: (i64, i64),
}

#[derive(Clone, Debug)]
pub struct Fan {
    pub triangles: Vec<Triangle>,
    pub walls: Vec<Wall>,
    pub boundary_edges: Vec<[usize; 2]>,
    pub interior_vertices: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FanStatistics {
    pub triangle_count: usize,
    pub interior_edge_count: usize,
    pub boundary_edge_count: usize,
    pub interior_vertex_count: usize,
    pub vertex_count: usize,
    /// `V - E + F == 1`.
    pub euler_check: bool,
}

fn n_det(ctx: &LatticeContext, tri: [usize; 3]) -> i128 {
    det3_i64(&tri.map(|v| ctx.n_coordinates(v)))
}

/// All 3-subsets of junior points forming a basis of `N`.
pub fn candidate_triangles(ctx: &LatticeContext) -> Vec<[usize; 3]> {
    let n = ctx.junior_points().len();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if n_det(ctx, [a, b, c]).abs() == 1 {
                    out.push([a, b, c]);
                }
            }
        }
    }
    out
}

/// `r^2` times the signed area of the triangle in the plane of the simplex,
/// computed as the determinant of the scaled vertex vectors divided by `r`.
fn orientation(ctx: &LatticeContext, a: usize, b: usize, c: usize) -> i128 {
    let p = ctx.junior_points();
    det3_i64(&[p[a].scaled, p[b].scaled, p[c].scaled])
}

pub fn build_fan(ctx: &LatticeContext) -> Result<Fan> {
    let table = MinimaTable::new(ctx);
    build_fan_with(ctx, &table)
}

pub fn build_fan_with(ctx: &LatticeContext, table: &MinimaTable<'_>) -> Result<Fan> {
    let candidates = candidate_triangles(ctx);
    let results: Vec<Option<Result<Triangle>>> = candidates
        .par_iter()
        .map(|&tri| match table.ggraph_for_cone(tri) {
            Ok(ggraph) => Some(Ok(Triangle {
                vertices: tri,
                n_coordinates: tri.map(|v| ctx.n_coordinates(v)),
                ggraph,
            })),
            Err(ConeFailure::NoMinimizer(_)) => None,
            Err(e @ ConeFailure::NonUnique(_)) => Some(Err(Error::invariant(
                "ggraph-uniqueness",
                format!("unimodular cone {tri:?}: {e}"),
            ))),
        })
        .collect();
    let mut triangles = Vec::new();
    for r in results.into_iter().flatten() {
        triangles.push(r?);
    }
    // candidates are generated in lexicographic order already; keep it explicit
    triangles.sort_by_key(|t| t.vertices);

    let mut edges: BTreeMap<[usize; 2], Vec<usize>> = BTreeMap::new();
    for (ti, t) in triangles.iter().enumerate() {
        let [a, b, c] = t.vertices;
        for e in [[a, b], [a, c], [b, c]] {
            edges.entry(e).or_default().push(ti);
        }
    }
    let junior = ctx.junior_points();
    let on_common_side = |e: &[usize; 2]| {
        (0..3).any(|i| junior[e[0]].scaled[i] == 0 && junior[e[1]].scaled[i] == 0)
    };
    let mut walls = Vec::new();
    let mut boundary_edges = Vec::new();
    for (e, sides) in &edges {
        match (sides.len(), on_common_side(e)) {
            (1, true) => boundary_edges.push(*e),
            (2, false) => {
                let third = |ti: usize| {
                    *triangles[ti]
                        .vertices
                        .iter()
                        .find(|v| !e.contains(v))
                        .expect("triangle has a third vertex")
                };
                let opposite = [third(sides[0]), third(sides[1])];
                let relation = wall_relation(ctx, *e, opposite)?;
                walls.push(Wall {
                    endpoints: *e,
                    sides: [sides[0], sides[1]],
                    opposite,
                    relation,
                });
            }
            (n, boundary) => {
                return Err(Error::invariant(
                    "edge-incidence",
                    format!(
                        "edge {e:?} ({}) lies in {n} triangles",
                        if boundary { "boundary" } else { "interior" }
                    ),
                ))
            }
        }
    }
    let interior_vertices: Vec<usize> = (0..junior.len()).filter(|&i| !junior[i].on_boundary()).collect();
    let fan = Fan {
        triangles,
        walls,
        boundary_edges,
        interior_vertices,
    };
    validate(ctx, &fan)?;
    Ok(fan)
}

/// Solves `w + w' = alpha v1 + beta v2` exactly; fails unless alpha, beta are integers.
fn wall_relation(ctx: &LatticeContext, e: [usize; 2], opp: [usize; 2]) -> Result<(i64, i64)> {
    let p = ctx.junior_points();
    let v1 = p[e[0]].scaled;
    let v2 = p[e[1]].scaled;
    let s = [0, 1, 2].map(|i| p[opp[0]].scaled[i] + p[opp[1]].scaled[i]);
    // pick two coordinates with a nonzero 2x2 minor
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let det = v1[i] as i128 * v2[j] as i128 - v1[j] as i128 * v2[i] as i128;
        if det == 0 {
            continue;
        }
        let a_num = s[i] as i128 * v2[j] as i128 - s[j] as i128 * v2[i] as i128;
        let b_num = v1[i] as i128 * s[j] as i128 - v1[j] as i128 * s[i] as i128;
        if a_num % det != 0 || b_num % det != 0 {
            return Err(Error::invariant(
                "wall-relation",
                format!("wall {e:?}: coefficients {a_num}/{det}, {b_num}/{det} are not integers"),
            ));
        }
        let (alpha, beta) = ((a_num / det) as i64, (b_num / det) as i64);
        for k in 0..3 {
            if alpha * v1[k] + beta * v2[k] != s[k] {
                return Err(Error::invariant(
                    "wall-relation",
                    format!("wall {e:?}: relation fails in coordinate {k}"),
                ));
            }
        }
        if alpha + beta != 2 {
            return Err(Error::invariant(
                "wall-relation",
                format!("wall {e:?}: alpha + beta = {} != 2", alpha + beta),
            ));
        }
        return Ok((alpha, beta));
    }
    Err(Error::invariant("wall-relation", format!("wall {e:?} is degenerate")))
}

/// Tiling checks: `r` unimodular triangles, every junior point used, walls separate
/// their two sides, the boundary is covered, and the Euler characteristic is 1.
pub fn validate(ctx: &LatticeContext, fan: &Fan) -> Result<()> {
    let r = ctx.order() as usize;
    if fan.triangles.len() != r {
        return Err(Error::invariant(
            "triangle-count",
            format!("{} triangles for a group of order {r}", fan.triangles.len()),
        ));
    }
    let junior = ctx.junior_points();
    let mut used = vec![false; junior.len()];
    for t in &fan.triangles {
        if n_det(ctx, t.vertices).abs() != 1 {
            return Err(Error::invariant("unimodular", format!("{:?} is not basic", t.vertices)));
        }
        for &v in &t.vertices {
            used[v] = true;
        }
        t.ggraph
            .check(ctx)
            .map_err(|d| Error::invariant("ggraph-order-ideal", format!("{:?}: {d}", t.vertices)))?;
    }
    if let Some(v) = used.iter().position(|u| !u) {
        return Err(Error::invariant(
            "vertex-coverage",
            format!("junior point {:?} is not a vertex", junior[v].scaled),
        ));
    }
    for w in &fan.walls {
        let [a, b] = w.endpoints;
        let s0 = orientation(ctx, a, b, w.opposite[0]).signum();
        let s1 = orientation(ctx, a, b, w.opposite[1]).signum();
        if s0 == 0 || s0 == s1 {
            return Err(Error::invariant(
                "interior-disjoint",
                format!("both sides of wall {:?} lie on the same side", w.endpoints),
            ));
        }
    }
    // each side of the simplex is cut into (points on it - 1) boundary edges
    let expected_boundary: usize = (0..3)
        .map(|i| junior.iter().filter(|p| p.scaled[i] == 0).count() - 1)
        .sum();
    if fan.boundary_edges.len() != expected_boundary {
        return Err(Error::invariant(
            "boundary-cover",
            format!("{} boundary edges, expected {expected_boundary}", fan.boundary_edges.len()),
        ));
    }
    let stats = fan_statistics(ctx, fan);
    if !stats.euler_check {
        return Err(Error::invariant("euler", format!("V - E + F != 1 for {stats:?}")));
    }
    Ok(())
}

pub fn fan_statistics(ctx: &LatticeContext, fan: &Fan) -> FanStatistics {
    let v = ctx.junior_points().len() as i64;
    let e = (fan.walls.len() + fan.boundary_edges.len()) as i64;
    let f = fan.triangles.len() as i64;
    FanStatistics {
        triangle_count: fan.triangles.len(),
        interior_edge_count: fan.walls.len(),
        boundary_edge_count: fan.boundary_edges.len(),
        interior_vertex_count: fan.interior_vertices.len(),
        vertex_count: v as usize,
        euler_check: v - e + f == 1,
    }
}

impl Fan {
    /// Index of the triangle whose closed cone contains the scaled point, if any.
    pub fn locate(&self, ctx: &LatticeContext, point: [i64; 3]) -> Vec<usize> {
        let p = ctx.junior_points();
        self.triangles
            .iter()
            .enumerate()
            .filter(|(_, t)| {
                let [a, b, c] = t.vertices.map(|v| p[v].scaled);
                let total = det3_i64(&[a, b, c]);
                let parts = [
                    det3_i64(&[point, b, c]),
                    det3_i64(&[a, point, c]),
                    det3_i64(&[a, b, point]),
                ];
                parts.iter().all(|&d| d.signum() == total.signum() || d == 0)
            })
            .map(|(i, _)| i)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(s: &str) -> LatticeContext {
        LatticeContext::new(s.parse().unwrap()).unwrap()
    }

    fn scaled_triangles(c: &LatticeContext, fan: &Fan) -> Vec<[[i64; 3]; 3]> {
        let p = c.junior_points();
        fan.triangles.iter().map(|t| t.vertices.map(|v| p[v].scaled)).collect()
    }

    #[test]
    fn candidates() {
        let c = ctx("1/5(1,1,3)");
        let cand = candidate_triangles(&c);
        let p = c.junior_points();
        let find = |s: [i64; 3]| p.iter().position(|q| q.scaled == s).unwrap();
        let mut t = [find([0, 0, 5]), find([1, 1, 3]), find([5, 0, 0])];
        t.sort();
        assert!(cand.contains(&t));
        let mut corners = [find([0, 0, 5]), find([0, 5, 0]), find([5, 0, 0])];
        corners.sort();
        assert!(!cand.contains(&corners));
        assert_eq!(n_det(&c, corners).abs(), 5);

        let one = ctx("1/1(0,0,0)");
        assert_eq!(candidate_triangles(&one), vec![[0, 1, 2]]);
    }

    #[test]
    fn fan_of_order_five() {
        let c = ctx("1/5(1,1,3)");
        let fan = build_fan(&c).unwrap();
        let ez = [0, 0, 5];
        let ey = [0, 5, 0];
        let ex = [5, 0, 0];
        let p1 = [1, 1, 3];
        let p2 = [2, 2, 1];
        let mut expected = vec![[ez, p1, ex], [ex, p1, p2], [ez, ey, p1], [ey, p1, p2], [ex, p2, ey]];
        for t in expected.iter_mut() {
            t.sort();
        }
        expected.sort();
        assert_eq!(scaled_triangles(&c, &fan), expected);
        let s = fan_statistics(&c, &fan);
        assert_eq!(
            (s.triangle_count, s.interior_edge_count, s.boundary_edge_count, s.interior_vertex_count),
            (5, 6, 3, 2)
        );
        assert!(s.euler_check);
    }

    #[test]
    fn fan_of_klein_four() {
        let c = ctx("1/2(1,0,1);1/2(0,1,1)");
        let fan = build_fan(&c).unwrap();
        let tris = scaled_triangles(&c, &fan);
        assert_eq!(tris.len(), 4);
        assert!(tris.contains(&[[0, 2, 2], [2, 0, 2], [2, 2, 0]]));
        let s = fan_statistics(&c, &fan);
        assert_eq!((s.interior_edge_count, s.boundary_edge_count), (3, 6));
    }

    #[test]
    fn fan_of_one_third() {
        let c = ctx("1/3(1,1,1)");
        let fan = build_fan(&c).unwrap();
        let tris = scaled_triangles(&c, &fan);
        assert_eq!(tris.len(), 3);
        assert!(tris.iter().all(|t| t.contains(&[1, 1, 1])));
    }

    #[test]
    fn edge_counts_of_example_families() {
        for (s, tri, inner, bdry) in [("1/6(1,1,4)", 6, 7, 4), ("1/7(1,1,5)", 7, 9, 3)] {
            let c = ctx(s);
            let st = fan_statistics(&c, &build_fan(&c).unwrap());
            assert_eq!(
                (st.triangle_count, st.interior_edge_count, st.boundary_edge_count),
                (tri, inner, bdry),
                "{s}"
            );
        }
    }

    #[test]
    fn walls_satisfy_relation() {
        for s in ["1/5(1,1,3)", "1/11(1,2,8)", "1/2(1,0,1);1/2(0,1,1)", "1/12(1,3,8)"] {
            let c = ctx(s);
            let fan = build_fan(&c).unwrap();
            let p = c.junior_points();
            for w in &fan.walls {
                let (a, b) = w.relation;
                assert_eq!(a + b, 2);
                for k in 0..3 {
                    assert_eq!(
                        p[w.opposite[0]].scaled[k] + p[w.opposite[1]].scaled[k],
                        a * p[w.endpoints[0]].scaled[k] + b * p[w.endpoints[1]].scaled[k]
                    );
                }
            }
        }
    }

    #[test]
    fn trivial_group_is_one_triangle() {
        let c = ctx("1/1(0,0,0)");
        let fan = build_fan(&c).unwrap();
        assert_eq!(fan.triangles.len(), 1);
        assert!(fan.walls.is_empty());
        assert_eq!(fan.boundary_edges.len(), 3);
    }
}
