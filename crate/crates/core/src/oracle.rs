//! Independent cross-checks of the main pipeline on small groups.
//!
//! Nothing here reuses the fan builder's minima tables or the localizer. The
//! sampling oracle rediscovers G-graphs by minimizing at random interior points,
//! and the duality oracle re-derives the local data of every chart and sums
//! Laurent expansions at `s = 0` in place of truncated series at `t = 1`.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::group::{Character, Exponent, LatticeContext};
use crate::ktheory::KTheory;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    pub seed: u64,
    pub sample_count: usize,
    /// Largest group order the brute-force loops accept.
    pub r_cap: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            seed: 20_240_601,
            sample_count: 1000,
            r_cap: 15,
        }
    }
}

/// Common denominator of sample points; prime and far larger than any group order.
const SAMPLE_DENOMINATOR: i64 = 1_000_003;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mismatch {
    /// The point lies in `count` triangles instead of exactly one.
    Containment { count: usize },
    /// The pointwise minimizer of `character` differs from the triangle's G-graph.
    GGraph {
        triangle: usize,
        character: Character,
        expected: Exponent,
        found: Exponent,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampleWitness {
    /// Numerators over [`SAMPLE_DENOMINATOR`]; they sum to the denominator.
    pub point: [i64; 3],
    pub mismatch: Mismatch,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SamplingReport {
    pub samples: usize,
    /// Points redrawn because they sat on a wall or a minimizer tie.
    pub resamples: usize,
    pub distinct_ggraphs: usize,
    pub witnesses: Vec<SampleWitness>,
}

impl SamplingReport {
    pub fn passed(&self) -> bool {
        self.witnesses.is_empty()
    }
}

fn box_members(ctx: &LatticeContext) -> Vec<Vec<Exponent>> {
    let r = ctx.order() as i64;
    let mut members = vec![Vec::new(); ctx.order() as usize];
    for a in 0..r {
        for b in 0..r {
            for c in 0..r {
                members[ctx.character_of(&[a, b, c]).index()].push([a, b, c]);
            }
        }
    }
    members
}

fn dot(e: &Exponent, q: &[i64; 3]) -> i64 {
    e[0] * q[0] + e[1] * q[1] + e[2] * q[2]
}

fn pointwise_with(members: &[Vec<Exponent>], q: &[i64; 3]) -> Option<Vec<Exponent>> {
    members
        .iter()
        .map(|class| {
            let best = class.iter().map(|e| dot(e, q)).min()?;
            let mut hits = class.iter().filter(|e| dot(e, q) == best);
            let first = *hits.next()?;
            hits.next().is_none().then_some(first)
        })
        .collect()
}

/// Per-class minimizers of `<e, q>` at a point `q` with strictly positive coordinates,
/// or `None` when some class has a tie (the point lies on a wall of that class).
pub fn pointwise_ggraph(ctx: &LatticeContext, q: &[i64; 3]) -> Option<Vec<Exponent>> {
    assert!(q.iter().all(|&c| c > 0), "point must be interior");
    pointwise_with(&box_members(ctx), q)
}

fn det3(m: [[i128; 3]; 3]) -> i128 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

fn widen(v: [i64; 3]) -> [i128; 3] {
    v.map(i128::from)
}

/// Sign pattern of the barycentric coordinates of `q` in a triangle: `Some(true)`
/// strictly inside, `Some(false)` strictly outside, `None` on an edge line.
fn strictly_inside(tri: &[[i64; 3]; 3], q: &[i64; 3]) -> Option<bool> {
    let base = det3(tri.map(widen));
    let mut inside = true;
    for i in 0..3 {
        let mut m = tri.map(widen);
        m[i] = widen(*q);
        let d = det3(m);
        if d == 0 {
            return None;
        }
        if (d > 0) != (base > 0) {
            inside = false;
        }
    }
    Some(inside)
}

/// Draws random rational points in the open junior simplex and checks that each
/// lies in exactly one triangle whose G-graph matches the pointwise minimizers.
pub fn sampling_fan_oracle(ctx: &LatticeContext, fan: &Fan, config: &OracleConfig) -> Result<SamplingReport> {
    if ctx.order() > config.r_cap {
        return Err(Error::AboveCap {
            r: ctx.order(),
            cap: config.r_cap,
        });
    }
    let members = box_members(ctx);
    let triangles: Vec<[[i64; 3]; 3]> = fan
        .triangles
        .iter()
        .map(|t| t.vertices.map(|v| ctx.junior_points()[v].scaled))
        .collect();

    let outcomes: Vec<(usize, Vec<Exponent>, Option<SampleWitness>)> = (0..config.sample_count)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            rng.set_stream(i as u64);
            let mut redraws = 0;
            loop {
                let mut cuts = [
                    rng.gen_range(1..SAMPLE_DENOMINATOR),
                    rng.gen_range(1..SAMPLE_DENOMINATOR),
                ];
                cuts.sort_unstable();
                let q = [cuts[0], cuts[1] - cuts[0], SAMPLE_DENOMINATOR - cuts[1]];
                if q.contains(&0) {
                    redraws += 1;
                    continue;
                }
                let Some(sides) = triangles
                    .iter()
                    .map(|t| strictly_inside(t, &q))
                    .collect::<Option<Vec<bool>>>()
                else {
                    redraws += 1;
                    continue;
                };
                let Some(found) = pointwise_with(&members, &q) else {
                    redraws += 1;
                    continue;
                };
                let hits: Vec<usize> = (0..sides.len()).filter(|&k| sides[k]).collect();
                let witness = if hits.len() != 1 {
                    Some(SampleWitness {
                        point: q,
                        mismatch: Mismatch::Containment { count: hits.len() },
                    })
                } else {
                    let g = &fan.triangles[hits[0]].ggraph;
                    ctx.characters()
                        .find(|&ch| g.monomial(ch) != found[ch.index()])
                        .map(|ch| SampleWitness {
                            point: q,
                            mismatch: Mismatch::GGraph {
                                triangle: hits[0],
                                character: ch,
                                expected: g.monomial(ch),
                                found: found[ch.index()],
                            },
                        })
                };
                return (redraws, found, witness);
            }
        })
        .collect();

    let mut seen: Vec<&Vec<Exponent>> = outcomes.iter().map(|o| &o.1).collect();
    seen.sort();
    seen.dedup();
    Ok(SamplingReport {
        samples: config.sample_count,
        resamples: outcomes.iter().map(|o| o.0).sum(),
        distinct_ggraphs: seen.len(),
        witnesses: outcomes.iter().filter_map(|o| o.2.clone()).collect(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityComparison {
    /// `[mu][chi]` computed by the oracle.
    pub oracle: Vec<Vec<i128>>,
    /// `[mu][chi]` computed by the main pipeline.
    pub pipeline: Vec<Vec<BigRational>>,
    pub disagreements: Vec<(Character, Character)>,
}

impl DualityComparison {
    pub fn agrees(&self) -> bool {
        self.disagreements.is_empty()
    }

    pub fn oracle_is_identity(&self) -> bool {
        self.oracle
            .iter()
            .enumerate()
            .all(|(i, row)| row.iter().enumerate().all(|(j, &v)| v == i128::from(i == j)))
    }
}

struct Chart {
    ggraph: Vec<Exponent>,
    /// Tangent weights `u_i`, with `<u_i, v_j> = delta_ij`.
    weights: [Exponent; 3],
}

fn chart(ctx: &LatticeContext, members: &[Vec<Exponent>], vertices: [usize; 3]) -> Result<Chart> {
    let r = ctx.order() as i128;
    let s = vertices.map(|v| ctx.junior_points()[v].scaled);
    let barycenter = [0, 1, 2].map(|k| s[0][k] + s[1][k] + s[2][k]);
    let ggraph = pointwise_with(members, &barycenter).ok_or_else(|| {
        Error::invariant("oracle-ggraph", format!("minimizer tie at the barycenter of {vertices:?}"))
    })?;
    let m = s.map(widen);
    let det = det3(m);
    let mut weights = [[0i64; 3]; 3];
    // column i of r * S^{-1}, via Cramer: solve S u = r e_i
    for (i, u) in weights.iter_mut().enumerate() {
        for k in 0..3 {
            let mut mk = m;
            for j in 0..3 {
                mk[j][k] = if i == j { r } else { 0 };
            }
            let num = det3(mk);
            if num % det != 0 {
                return Err(Error::invariant(
                    "oracle-dual-basis",
                    format!("chart {vertices:?} is not unimodular"),
                ));
            }
            u[k] = (num / det) as i64;
        }
    }
    Ok(Chart { ggraph, weights })
}

/// Generic integer direction for the one-parameter subtorus `t = s^c`.
///
/// The candidates run along a parabola, so a nonzero weight vanishes on at most two
/// of them. A straight line of candidates can stall forever on a weight orthogonal to it.
fn oracle_direction(charts: &[Chart]) -> [i64; 3] {
    (0..)
        .map(|j: i64| [1, 7 + j, 19 + j * j])
        .find(|c| charts.iter().all(|ch| ch.weights.iter().all(|u| dot(u, c) != 0)))
        .expect("finitely many bad directions")
}

/// Euler characteristic at `t = 1` of `sum over charts of numerator / prod (1 - t^u)`,
/// read off as the coefficient sum of the Laurent polynomial it equals.
fn laurent_euler(charts: &[Chart], numerators: &[Vec<(i64, Exponent)>], c: [i64; 3]) -> Result<i128> {
    const GUARD: i64 = 4;
    struct Local {
        sign: i128,
        terms: Vec<(i128, i64)>,
        periods: Vec<i64>,
    }
    let locals: Vec<Local> = charts
        .iter()
        .zip(numerators)
        .map(|(chart, num)| {
            let mut sign = 1;
            let mut shift = 0;
            let mut periods = Vec::new();
            for u in &chart.weights {
                let k = dot(u, &c);
                if k > 0 {
                    periods.push(k);
                } else {
                    // 1/(1 - s^-m) = -s^m / (1 - s^m)
                    sign = -sign;
                    shift -= k;
                    periods.push(-k);
                }
            }
            let terms = num
                .iter()
                .map(|&(coef, e)| (coef as i128, dot(&e, &c) + shift))
                .collect();
            Local { sign, terms, periods }
        })
        .collect();
    let low = locals
        .iter()
        .flat_map(|l| l.terms.iter().map(|t| t.1))
        .min()
        .unwrap_or(0);
    let high = locals
        .iter()
        .map(|l| l.terms.iter().map(|t| t.1).max().unwrap_or(low) - l.periods.iter().sum::<i64>())
        .max()
        .unwrap_or(low)
        .max(low);
    let top = locals
        .iter()
        .flat_map(|l| l.terms.iter().map(|t| t.1))
        .max()
        .unwrap_or(low)
        .max(high);
    let len = (top - low + 1 + GUARD) as usize;
    let mut total = vec![0i128; len];
    for l in &locals {
        let mut a = vec![0i128; len];
        for &(coef, e) in &l.terms {
            a[(e - low) as usize] += l.sign * coef;
        }
        for &m in &l.periods {
            let m = m as usize;
            for i in m..len {
                a[i] += a[i - m];
            }
        }
        for (t, x) in total.iter_mut().zip(a) {
            *t += x;
        }
    }
    let cut = (high - low + 1) as usize;
    if total[cut..].iter().any(|&x| x != 0) {
        return Err(Error::invariant(
            "oracle-laurent",
            "localization sum is not a Laurent polynomial of the expected degree",
        ));
    }
    Ok(total[..cut].iter().sum())
}

/// Recomputes `chi(L_mu^∨ ⊗ Psi(chi ⊗ O_0))` for all pairs and compares with the pipeline.
pub fn brute_duality_oracle(ctx: &LatticeContext, fan: &Fan, config: &OracleConfig) -> Result<DualityComparison> {
    if ctx.order() > config.r_cap {
        return Err(Error::AboveCap {
            r: ctx.order(),
            cap: config.r_cap,
        });
    }
    let members = box_members(ctx);
    let charts = fan
        .triangles
        .iter()
        .map(|t| chart(ctx, &members, t.vertices))
        .collect::<Result<Vec<_>>>()?;
    let c = oracle_direction(&charts);
    let koszul: Vec<(i64, Exponent, Character)> = (0..8)
        .map(|bits: i64| {
            let e = [bits & 1, (bits >> 1) & 1, (bits >> 2) & 1];
            let size = e.iter().sum::<i64>();
            (if size % 2 == 0 { -1 } else { 1 }, e, ctx.character_of(&e))
        })
        .collect();
    let chars: Vec<Character> = ctx.characters().collect();
    let oracle = chars
        .par_iter()
        .map(|&mu| {
            chars
                .iter()
                .map(|&chi| {
                    let numerators: Vec<Vec<(i64, Exponent)>> = charts
                        .iter()
                        .map(|chart| {
                            let g_mu = chart.ggraph[mu.index()];
                            koszul
                                .iter()
                                .map(|&(sign, e, rho)| {
                                    let g = chart.ggraph[ctx.sub(chi, rho).index()];
                                    (sign, [0, 1, 2].map(|k| g_mu[k] - g[k] - e[k]))
                                })
                                .collect()
                        })
                        .collect();
                    laurent_euler(&charts, &numerators, c)
                })
                .collect::<Result<Vec<i128>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let pipeline = KTheory::new(ctx, fan)?.duality_matrix()?;
    let mut disagreements = Vec::new();
    for (i, &mu) in chars.iter().enumerate() {
        for (j, &chi) in chars.iter().enumerate() {
            if pipeline[i][j] != BigRational::from_integer(BigInt::from(oracle[i][j])) {
                disagreements.push((mu, chi));
            }
        }
    }
    Ok(DualityComparison {
        oracle,
        pipeline,
        disagreements,
    })
}
