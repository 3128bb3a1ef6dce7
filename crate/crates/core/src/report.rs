//! One-shot analysis of a group, its serializable report, and the invariant suite.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fan::{build_fan, fan_statistics, validate, Fan, FanStatistics};
use crate::group::{fraction_string, Axis, GroupSpec, LatticeContext};
use crate::ktheory::{wall_degree, B0Report, KTheory};
use crate::oracle::{brute_duality_oracle, sampling_fan_oracle, OracleConfig};

pub const SCHEMA_VERSION: u32 = 1;

/// An exact rational as an integer pair with positive denominator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fraction {
    pub num: i64,
    pub den: i64,
}

impl Fraction {
    pub fn from_rational(q: &BigRational) -> Result<Fraction> {
        match (q.numer().to_i64(), q.denom().to_i64()) {
            (Some(num), Some(den)) => Ok(Fraction { num, den }),
            _ => Err(Error::invariant("fraction-range", format!("{q} does not fit in 64 bits"))),
        }
    }

    pub fn to_rational(self) -> BigRational {
        BigRational::new(BigInt::from(self.num), BigInt::from(self.den))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JuniorPointEntry {
    /// Coordinates as `p/q` strings.
    pub coords: [String; 3],
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub corner: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallEntry {
    pub endpoints: [usize; 2],
    pub sides: [usize; 2],
    /// Degree of each tautological bundle on the wall's curve, by character index.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub degrees: Option<Vec<u64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterEntry {
    pub label: String,
    pub homological_degree: i8,
    pub support_dim: u8,
    /// `p(n) = quadratic * n^2 + linear * n`.
    pub quadratic: Fraction,
    pub linear: Fraction,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Statistics {
    pub junior_points: usize,
    pub triangles: usize,
    pub interior_edges: usize,
    pub boundary_edges: usize,
    pub interior_vertices: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema_version: u32,
    pub tool_version: String,
    pub group: String,
    pub r: u64,
    pub junior_points: Vec<JuniorPointEntry>,
    pub triangles: Vec<[usize; 3]>,
    pub walls: Vec<WallEntry>,
    pub statistics: Statistics,
    pub characters: Vec<CharacterEntry>,
    pub h0: Vec<String>,
    pub b0: Fraction,
    pub checks: Vec<CheckResult>,
    pub notes: Vec<String>,
}

/// Everything computed for one group.
pub struct Analysis {
    pub ctx: LatticeContext,
    pub fan: Fan,
    pub statistics: FanStatistics,
    pub b0: B0Report,
    pub checks: Vec<CheckResult>,
}

impl Analysis {
    /// Builds the fan, classifies every nontrivial character, and runs the
    /// invariant suite. Oracles run only when a configuration is given.
    pub fn run(spec: GroupSpec, oracle: Option<&OracleConfig>) -> Result<Analysis> {
        let ctx = LatticeContext::new(spec)?;
        if ctx.order() < 2 {
            return Err(Error::NoNontrivialCharacters);
        }
        let fan = build_fan(&ctx)?;
        let statistics = fan_statistics(&ctx, &fan);
        let b0 = KTheory::new(&ctx, &fan)?.report()?;
        let checks = run_checks(&ctx, &fan, oracle);
        Ok(Analysis {
            ctx,
            fan,
            statistics,
            b0,
            checks,
        })
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn report(&self, tool_version: &str, with_degrees: bool) -> Result<AnalysisReport> {
        let ctx = &self.ctx;
        let r = ctx.order();
        let junior_points = ctx
            .junior_points()
            .iter()
            .map(|p| JuniorPointEntry {
                coords: p.coords(r).map(|c| fraction_string(&c)),
                corner: p.corner.map(|a| {
                    match a {
                        Axis::X => "e_x",
                        Axis::Y => "e_y",
                        Axis::Z => "e_z",
                    }
                    .to_string()
                }),
            })
            .collect();
        let walls = self
            .fan
            .walls
            .iter()
            .enumerate()
            .map(|(i, w)| WallEntry {
                endpoints: w.endpoints,
                sides: w.sides,
                degrees: with_degrees.then(|| self.b0.wall_degrees[i].clone()),
            })
            .collect();
        let characters = self
            .b0
            .records
            .iter()
            .map(|rec| {
                Ok(CharacterEntry {
                    label: rec.label.clone(),
                    homological_degree: rec.homological_degree,
                    support_dim: rec.support_dim,
                    quadratic: Fraction::from_rational(&rec.quadratic)?,
                    linear: Fraction::from_rational(&rec.linear)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let st = &self.statistics;
        Ok(AnalysisReport {
            schema_version: SCHEMA_VERSION,
            tool_version: tool_version.to_string(),
            group: ctx.spec().to_string(),
            r,
            junior_points,
            triangles: self.fan.triangles.iter().map(|t| t.vertices).collect(),
            walls,
            statistics: Statistics {
                junior_points: st.vertex_count,
                triangles: st.triangle_count,
                interior_edges: st.interior_edge_count,
                boundary_edges: st.boundary_edge_count,
                interior_vertices: st.interior_vertex_count,
            },
            characters,
            h0: self.b0.h0.iter().map(|&c| ctx.label(c)).collect(),
            b0: Fraction::from_rational(&self.b0.b0)?,
            checks: self.checks.clone(),
            notes: notes(ctx, &self.b0),
        })
    }
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Weights `(1, 1, r - 2)` of a single cyclic generator, if that is the group.
fn one_one_family(ctx: &LatticeContext) -> Option<u64> {
    let gens = &ctx.spec().generators;
    if gens.len() != 1 {
        return None;
    }
    let g = &gens[0];
    let r = g.order;
    let mut w = g.weights;
    w.sort_unstable();
    (r >= 3 && w == [1, 1, r - 2]).then_some(r)
}

/// Remarks comparing the computed share with closed forms quoted for known families,
/// and flags for values outside the expected range.
pub fn notes(ctx: &LatticeContext, rep: &B0Report) -> Vec<String> {
    let mut out = Vec::new();
    if let Some(r) = one_one_family(ctx) {
        let k = (r / 2) as i64;
        let (formula, text) = if r % 2 == 0 {
            (q(k - 1, 2 * k - 1), "(k-1)/(2k-1)")
        } else {
            (q(k - 1, 2 * k), "(k-1)/(2k)")
        };
        let family = if r % 2 == 0 { "1/2k(1,1,2k-2)" } else { "1/(2k+1)(1,1,2k-1)" };
        let verdict = if formula == rep.b0 { "agrees with" } else { "differs from" };
        out.push(format!(
            "family {family} with k = {k}: the closed form {text} = {} {verdict} the computed share {}",
            fraction_string(&formula),
            fraction_string(&rep.b0)
        ));
    }
    let isolated = ctx
        .spec()
        .generators
        .iter()
        .all(|g| g.weights.iter().all(|&w| w.gcd(&g.order) == 1));
    if ctx.spec().generators.len() == 1 && !isolated {
        out.push("the singularity is not isolated: some weight shares a factor with the order".into());
    }
    if rep.b0 < q(1, 4) || rep.b0 > BigRational::one() {
        out.push(format!("share {} lies outside [1/4, 1]", fraction_string(&rep.b0)));
    }
    out
}

fn check(name: &str, outcome: Result<String>) -> CheckResult {
    match outcome {
        Ok(detail) => CheckResult {
            name: name.to_string(),
            passed: true,
            detail,
        },
        Err(e) => CheckResult {
            name: name.to_string(),
            passed: false,
            detail: e.to_string(),
        },
    }
}

fn interior_edge_bound(ctx: &LatticeContext, fan: &Fan) -> Result<String> {
    let st = fan_statistics(ctx, fan);
    let r = ctx.order() as usize;
    let twice = 2 * st.interior_edge_count;
    let bound = 3 * r - 3;
    let side_points = ctx.junior_points().iter().filter(|p| p.on_boundary() && p.corner.is_none()).count();
    let mut detail = format!(
        "interior edges = {} {} (3r-3)/2 = {}",
        st.interior_edge_count,
        if twice == bound { "=" } else { "<" },
        fraction_string(&q(bound as i64, 2))
    );
    if twice > bound {
        return Err(Error::invariant("interior-edge-bound", detail.replace('<', ">")));
    }
    if (twice == bound) != (side_points == 0) {
        return Err(Error::invariant(
            "interior-edge-bound",
            format!("{detail}, but {side_points} junior points subdivide the sides"),
        ));
    }
    if let [g] = ctx.spec().generators.as_slice() {
        let gcds: Vec<String> = g
            .weights
            .iter()
            .map(|&w| format!("gcd({w},{}) = {}", g.order, w.gcd(&g.order)))
            .collect();
        let coprime = g.weights.iter().all(|&w| w.gcd(&g.order) == 1);
        if coprime != (twice == bound) {
            return Err(Error::invariant(
                "interior-edge-bound",
                format!("{detail}; {} contradicts the coprimality criterion", gcds.join(", ")),
            ));
        }
        detail.push_str("; ");
        detail.push_str(&gcds.join(", "));
    }
    Ok(detail)
}

fn wall_relations(ctx: &LatticeContext, fan: &Fan) -> Result<String> {
    let p = ctx.junior_points();
    for w in &fan.walls {
        let (alpha, beta) = w.relation;
        let [v1, v2] = w.endpoints.map(|i| p[i].scaled);
        let [o1, o2] = w.opposite.map(|i| p[i].scaled);
        let ok = (0..3).all(|k| o1[k] + o2[k] == alpha * v1[k] + beta * v2[k]) && alpha + beta == 2;
        if !ok {
            return Err(Error::invariant(
                "wall-relation",
                format!("wall {:?} with relation {:?}", w.endpoints, w.relation),
            ));
        }
    }
    Ok(format!("{} walls satisfy w + w' = a v1 + b v2 with a + b = 2", fan.walls.len()))
}

/// Named invariant checks; oracles run only when `oracle` is given.
pub fn run_checks(ctx: &LatticeContext, fan: &Fan, oracle: Option<&OracleConfig>) -> Vec<CheckResult> {
    let r = ctx.order();
    let mut out = vec![
        check("lattice-duality", ctx.check_duality().map(|_| "M is dual to N".into())),
        check(
            "tiling",
            validate(ctx, fan).map(|_| format!("{} unimodular triangles tile the simplex", fan.triangles.len())),
        ),
        check("interior-edge-bound", interior_edge_bound(ctx, fan)),
        check("wall-relations", wall_relations(ctx, fan)),
        check(
            "wall-degree-symmetry",
            fan.walls
                .iter()
                .try_for_each(|w| ctx.characters().try_for_each(|ch| wall_degree(ctx, fan, w, ch).map(|_| ())))
                .map(|_| "degrees are integral, nonnegative and side-independent".into()),
        ),
    ];
    let k = match KTheory::new(ctx, fan) {
        Ok(k) => {
            out.push(check("ample-convexity", Ok("every wall has positive total degree".into())));
            k
        }
        Err(e) => {
            out.push(check("ample-convexity", Err(e)));
            return out;
        }
    };
    out.push(check(
        "duality-identity",
        k.check_duality().map(|_| format!("{r}x{r} pairing matrix is the identity")),
    ));
    let mut zero = Ok(());
    let mut fit = Ok(());
    for ch in ctx.nontrivial_characters() {
        match k.classify(ch) {
            Ok(_) => {}
            Err(e @ Error::Invariant { name: "euler-at-zero", .. }) => {
                if zero.is_ok() {
                    zero = Err(e);
                }
            }
            Err(e) => {
                if fit.is_ok() {
                    fit = Err(e);
                }
            }
        }
    }
    out.push(check("euler-at-zero", zero.map(|_| "p(0) = 0 for every nontrivial character".into())));
    out.push(check(
        "polynomial-fit",
        fit.map(|_| "p(n) fits a quadratic through 0 on n = 0..4 and predicts n = 5".into()),
    ));
    if let Some(cfg) = oracle {
        if r <= cfg.r_cap {
            out.push(check(
                "sampling-oracle",
                sampling_fan_oracle(ctx, fan, cfg).and_then(|rep| {
                    if rep.passed() {
                        Ok(format!(
                            "{} samples (seed {}), {} distinct G-graphs, no mismatches",
                            rep.samples, cfg.seed, rep.distinct_ggraphs
                        ))
                    } else {
                        Err(Error::invariant(
                            "sampling-oracle",
                            format!("{} mismatches, first {:?}", rep.witnesses.len(), rep.witnesses[0]),
                        ))
                    }
                }),
            ));
            out.push(check(
                "duality-oracle",
                brute_duality_oracle(ctx, fan, cfg).and_then(|cmp| {
                    if cmp.agrees() && cmp.oracle_is_identity() {
                        Ok("independent Laurent evaluation agrees entrywise".into())
                    } else {
                        Err(Error::invariant(
                            "duality-oracle",
                            format!("disagreements at {:?}", cmp.disagreements),
                        ))
                    }
                }),
            ));
        } else {
            for name in ["sampling-oracle", "duality-oracle"] {
                out.push(CheckResult {
                    name: name.into(),
                    passed: true,
                    detail: format!("skipped: r = {r} exceeds the cap {}", cfg.r_cap),
                });
            }
        }
    }
    out
}
