//! Homological degree of the McKay image of each character skyscraper.
//!
//! The image of `chi ⊗ O_0` is computed as a torus-equivariant K-class by
//! resolving `O_0` with the Koszul complex and pushing each term through the
//! universal G-cluster: at the fixed point of a chart the class is a signed sum of
//! eight monomials built from that chart's G-graph. Its Euler characteristic
//! against powers of the ample line bundle `det(⊕ L_mu)` is evaluated by
//! localization over the fixed points. The image is pure, so the sign of the
//! leading coefficient of that Hilbert polynomial gives the degree: positive for
//! a sheaf in degree 0, negative for a sheaf shifted into degree -1.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fan::{Fan, Wall};
use crate::group::{Character, Exponent, LatticeContext};
use crate::matrix::{adjugate_i64, det3_i64};

/// Sign conventions of the localized class.
///
/// - `tautological_sign`: the fiber of `L_mu` at a chart is `t^(s * exp m_mu)`;
///   the class numerator uses `t^(s * exp m_nu - e_S)`.
/// - `tangent_sign`: chart denominators are `prod (1 - t^(s * u_i))`.
/// - `koszul_add`: `nu(S, chi) = chi + rho_S` instead of `chi - rho_S`.
///
/// Only two of the eight combinations make the Euler pairing against the
/// tautological bundles the identity; of those, [`Conventions::CANONICAL`] is the
/// one whose images of `chi ⊗ O` are the duals `L_chi^∨`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Conventions {
    pub tautological_sign: i64,
    pub tangent_sign: i64,
    pub koszul_add: bool,
}

impl Conventions {
    pub const CANONICAL: Conventions = Conventions {
        tautological_sign: -1,
        tangent_sign: 1,
        koszul_add: false,
    };

    pub fn all() -> Vec<Conventions> {
        let mut out = Vec::with_capacity(8);
        for tautological_sign in [1, -1] {
            for tangent_sign in [1, -1] {
                for koszul_add in [false, true] {
                    out.push(Conventions {
                        tautological_sign,
                        tangent_sign,
                        koszul_add,
                    });
                }
            }
        }
        out
    }
}

/// Local data at the torus-fixed point of one triangle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPoint {
    /// `u_i` in `M` with `<u_i, v_j> = delta_ij` against the triangle's vertices.
    pub dual_basis: [Exponent; 3],
    /// `w_T = sum over characters of exp m_mu`: the fiber weight of `det(⊕ L_mu)`.
    pub ample_character: Exponent,
}

pub fn fixed_point_data(ctx: &LatticeContext, fan: &Fan) -> Result<Vec<FixedPoint>> {
    let r = ctx.order() as i128;
    let junior = ctx.junior_points();
    let mut out = Vec::with_capacity(fan.triangles.len());
    for t in &fan.triangles {
        let s = t.vertices.map(|v| junior[v].scaled);
        let det = det3_i64(&s);
        let adj = adjugate_i64(&s);
        let mut dual_basis = [[0i64; 3]; 3];
        for (i, u) in dual_basis.iter_mut().enumerate() {
            for k in 0..3 {
                let num = r * adj[k][i];
                if num % det != 0 {
                    return Err(Error::invariant(
                        "dual-basis",
                        format!("triangle {:?} has a non-integral dual basis", t.vertices),
                    ));
                }
                u[k] = (num / det) as i64;
            }
        }
        for (i, u) in dual_basis.iter().enumerate() {
            for (j, &v) in t.vertices.iter().enumerate() {
                let pairing = junior[v].pair_scaled(u);
                if pairing != if i == j { r as i64 } else { 0 } {
                    return Err(Error::invariant(
                        "dual-basis",
                        format!("<u_{i}, v_{j}> != delta for triangle {:?}", t.vertices),
                    ));
                }
            }
        }
        let mut w = [0i64; 3];
        for e in &t.ggraph.assignment {
            for k in 0..3 {
                w[k] += e[k];
            }
        }
        out.push(FixedPoint {
            dual_basis,
            ample_character: w,
        });
    }
    // Cartier condition: ample characters of adjacent charts agree on the wall.
    for wall in &fan.walls {
        let a = out[wall.sides[0]].ample_character;
        let b = out[wall.sides[1]].ample_character;
        let d = [a[0] - b[0], a[1] - b[1], a[2] - b[2]];
        for &v in &wall.endpoints {
            if junior[v].pair_scaled(&d) != 0 {
                return Err(Error::invariant(
                    "cartier",
                    format!("ample characters disagree on wall {:?}", wall.endpoints),
                ));
            }
        }
    }
    Ok(out)
}

/// Degree of `L_chi` on the exceptional curve of a wall:
/// `<exp m_chi(sigma') - exp m_chi(sigma), w>` with `w` the ray of sigma opposite the wall.
pub fn wall_degree(ctx: &LatticeContext, fan: &Fan, wall: &Wall, ch: Character) -> Result<u64> {
    let r = ctx.order() as i64;
    let junior = ctx.junior_points();
    let g0 = fan.triangles[wall.sides[0]].ggraph.monomial(ch);
    let g1 = fan.triangles[wall.sides[1]].ggraph.monomial(ch);
    let d = [g1[0] - g0[0], g1[1] - g0[1], g1[2] - g0[2]];
    let fwd = junior[wall.opposite[0]].pair_scaled(&d);
    let back = -junior[wall.opposite[1]].pair_scaled(&d);
    if fwd % r != 0 || fwd != back || fwd < 0 {
        return Err(Error::invariant(
            "wall-degree",
            format!(
                "wall {:?}, character {}: degrees {fwd}/{r} and {back}/{r}",
                wall.endpoints, ch.0
            ),
        ));
    }
    Ok((fwd / r) as u64)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmpleData {
    /// `a_T = sign * w_T` per triangle.
    pub per_triangle: Vec<Exponent>,
    pub sign: i64,
    /// `[wall][character]` degrees of the tautological bundles.
    pub wall_degrees: Vec<Vec<u64>>,
}

/// Polarization `det(⊕ L_mu)`, oriented so that its piecewise-linear support
/// function is strictly convex across every wall.
pub fn ample_data(ctx: &LatticeContext, fan: &Fan, fixed: &[FixedPoint]) -> Result<AmpleData> {
    let mut wall_degrees = Vec::with_capacity(fan.walls.len());
    for wall in &fan.walls {
        let row = ctx
            .characters()
            .map(|ch| wall_degree(ctx, fan, wall, ch))
            .collect::<Result<Vec<u64>>>()?;
        if row.iter().sum::<u64>() == 0 {
            return Err(Error::invariant(
                "ample-convexity",
                format!("no tautological bundle has positive degree on wall {:?}", wall.endpoints),
            ));
        }
        wall_degrees.push(row);
    }
    let r = ctx.order() as i64;
    let junior = ctx.junior_points();
    for sign in [1i64, -1] {
        let convex = fan.walls.iter().all(|wall| {
            let a = fixed[wall.sides[0]].ample_character;
            let b = fixed[wall.sides[1]].ample_character;
            let d = [b[0] - a[0], b[1] - a[1], b[2] - a[2]];
            sign * junior[wall.opposite[0]].pair_scaled(&d) > 0
        });
        if convex {
            let per_triangle = fixed
                .iter()
                .map(|f| f.ample_character.map(|c| sign * c))
                .collect();
            let _ = r;
            return Ok(AmpleData {
                per_triangle,
                sign,
                wall_degrees,
            });
        }
    }
    Err(Error::invariant(
        "ample-convexity",
        "neither orientation of det of the tautological bundles is strictly convex",
    ))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coefficient: i64,
    pub exponent: Exponent,
}

/// Equivariant K-class localized at the fixed points: one Laurent polynomial
/// numerator per triangle, over that chart's tangent denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalizedClass {
    pub per_triangle: Vec<Vec<Term>>,
}

impl LocalizedClass {
    /// Tensor with a line bundle whose fiber at triangle `i` is `t^shift(i)`.
    pub fn twisted(&self, shift: impl Fn(usize) -> Exponent) -> LocalizedClass {
        LocalizedClass {
            per_triangle: self
                .per_triangle
                .iter()
                .enumerate()
                .map(|(i, terms)| {
                    let s = shift(i);
                    terms
                        .iter()
                        .map(|t| Term {
                            coefficient: t.coefficient,
                            exponent: [0, 1, 2].map(|k| t.exponent[k] + s[k]),
                        })
                        .collect()
                })
                .collect(),
        }
    }
}

const SUBSETS: [[i64; 3]; 8] = [
    [0, 0, 0],
    [1, 0, 0],
    [0, 1, 0],
    [0, 0, 1],
    [1, 1, 0],
    [1, 0, 1],
    [0, 1, 1],
    [1, 1, 1],
];

/// Localization sum evaluated at `t = 1` through the substitution `t = exp(h * c)`.
#[derive(Clone, Debug)]
pub struct Localizer {
    direction: [i64; 3],
    /// Per triangle: coefficients of `h^0..h^3` in `h^3 / prod (1 - e^(k_i h))`.
    q: Vec<[BigRational; 4]>,
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, k| a * BigInt::from(k))
}

fn series_mul(a: &[BigRational; 4], b: &[BigRational; 4]) -> [BigRational; 4] {
    [0, 1, 2, 3].map(|n| {
        (0..=n)
            .map(|j| &a[j] * &b[n - j])
            .fold(BigRational::zero(), |x, y| x + y)
    })
}

fn series_inv(a: &[BigRational; 4]) -> [BigRational; 4] {
    let mut b: [BigRational; 4] = Default::default();
    b[0] = BigRational::one() / &a[0];
    for n in 1..4 {
        let s = (1..=n)
            .map(|j| &a[j] * &b[n - j])
            .fold(BigRational::zero(), |x, y| x + y);
        b[n] = -s / &a[0];
    }
    b
}

impl Localizer {
    /// Picks the first `c = (1, k, k^2)`, `k = 2, 3, ...`, pairing nonzero with every tangent weight.
    pub fn new(fixed: &[FixedPoint], tangent_sign: i64) -> Localizer {
        let weights: Vec<Exponent> = fixed
            .iter()
            .flat_map(|f| f.dual_basis.iter().map(move |u| u.map(|c| tangent_sign * c)))
            .collect();
        let direction = (2i64..)
            .map(|k| [1, k, k * k])
            .find(|c| weights.iter().all(|u| u[0] * c[0] + u[1] * c[1] + u[2] * c[2] != 0))
            .expect("a quadratic in k has finitely many roots");
        Self::with_direction(fixed, tangent_sign, direction)
    }

    pub fn with_direction(fixed: &[FixedPoint], tangent_sign: i64, direction: [i64; 3]) -> Localizer {
        let q = fixed
            .iter()
            .map(|f| {
                let mut acc: [BigRational; 4] = [
                    BigRational::one(),
                    BigRational::zero(),
                    BigRational::zero(),
                    BigRational::zero(),
                ];
                for u in &f.dual_basis {
                    let k = BigInt::from(tangent_sign * (u[0] * direction[0] + u[1] * direction[1] + u[2] * direction[2]));
                    assert!(!k.is_zero(), "direction {direction:?} is not generic");
                    // (1 - e^(k h)) / h = -sum_j k^(j+1) h^j / (j+1)!
                    let f: [BigRational; 4] = [0u32, 1, 2, 3].map(|j| {
                        -BigRational::new(num_traits::pow(k.clone(), j as usize + 1), factorial(j as usize + 1))
                    });
                    acc = series_mul(&acc, &series_inv(&f));
                }
                acc
            })
            .collect();
        Localizer { direction, q }
    }

    pub fn direction(&self) -> [i64; 3] {
        self.direction
    }

    /// Sum over fixed points of `numerator / prod (1 - t^u)` at `t = 1`.
    ///
    /// Fails if the sum has a pole there, i.e. the class is not compactly supported.
    pub fn evaluate(&self, class: &LocalizedClass) -> Result<BigRational> {
        let c = self.direction;
        let mut total: [BigRational; 4] = Default::default();
        for (terms, q) in class.per_triangle.iter().zip(&self.q) {
            let mut moments: [BigRational; 4] = Default::default();
            for t in terms {
                let e = BigInt::from(t.exponent[0] * c[0] + t.exponent[1] * c[1] + t.exponent[2] * c[2]);
                let mut power = BigInt::from(t.coefficient);
                for (d, m) in moments.iter_mut().enumerate() {
                    *m += BigRational::new(power.clone(), factorial(d));
                    power *= &e;
                }
            }
            for j in 0..4 {
                for d in 0..=j {
                    total[j] += &moments[d] * &q[j - d];
                }
            }
        }
        if let Some(j) = (0..3).find(|&j| !total[j].is_zero()) {
            return Err(Error::invariant(
                "compact-support",
                format!("localization sum has a pole of order {} at t = 1", 3 - j),
            ));
        }
        Ok(total[3].clone())
    }
}

/// Hilbert-polynomial classification of one character.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiClassRecord {
    pub character: Character,
    pub label: String,
    pub class: LocalizedClass,
    /// `p(n)` for `n = 0..=5`.
    pub values: Vec<BigRational>,
    /// `p(n) = quadratic * n^2 + linear * n`.
    pub quadratic: BigRational,
    pub linear: BigRational,
    /// 0 or -1.
    pub homological_degree: i8,
    pub support_dim: u8,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct B0Report {
    pub r: u64,
    pub h0: Vec<Character>,
    pub b0: BigRational,
    pub records: Vec<PsiClassRecord>,
    pub wall_degrees: Vec<Vec<u64>>,
}

pub const TWIST_RANGE: usize = 6;

/// Everything needed to evaluate Euler characteristics on a built fan.
pub struct KTheory<'a> {
    ctx: &'a LatticeContext,
    fan: &'a Fan,
    conventions: Conventions,
    fixed: Vec<FixedPoint>,
    ample: AmpleData,
    localizer: Localizer,
}

impl<'a> KTheory<'a> {
    pub fn new(ctx: &'a LatticeContext, fan: &'a Fan) -> Result<Self> {
        Self::with_conventions(ctx, fan, Conventions::CANONICAL)
    }

    pub fn with_conventions(ctx: &'a LatticeContext, fan: &'a Fan, conventions: Conventions) -> Result<Self> {
        let fixed = fixed_point_data(ctx, fan)?;
        let ample = ample_data(ctx, fan, &fixed)?;
        let localizer = Localizer::new(&fixed, conventions.tangent_sign);
        Ok(KTheory {
            ctx,
            fan,
            conventions,
            fixed,
            ample,
            localizer,
        })
    }

    pub fn context(&self) -> &LatticeContext {
        self.ctx
    }

    pub fn fixed_points(&self) -> &[FixedPoint] {
        &self.fixed
    }

    pub fn ample(&self) -> &AmpleData {
        &self.ample
    }

    pub fn localizer(&self) -> &Localizer {
        &self.localizer
    }

    /// Localized class of the image of `chi ⊗ O_0`.
    pub fn psi_class(&self, ch: Character) -> LocalizedClass {
        let conv = self.conventions;
        let ctx = self.ctx;
        let per_triangle = self
            .fan
            .triangles
            .iter()
            .map(|t| {
                SUBSETS
                    .iter()
                    .map(|s| {
                        let rho = ctx.character_of(s);
                        let nu = if conv.koszul_add { ctx.add(ch, rho) } else { ctx.sub(ch, rho) };
                        let m = t.ggraph.monomial(nu);
                        let parity = s.iter().sum::<i64>() % 2;
                        Term {
                            // overall sign from the shift in Grothendieck duality
                            coefficient: if parity == 0 { -1 } else { 1 },
                            exponent: [0, 1, 2].map(|k| conv.tautological_sign * m[k] - s[k]),
                        }
                    })
                    .collect()
            })
            .collect();
        LocalizedClass { per_triangle }
    }

    /// `chi(class ⊗ A^n)` with `A` the ample polarization.
    pub fn euler_characteristic(&self, class: &LocalizedClass, n: i64) -> Result<BigRational> {
        if n == 0 {
            return self.localizer.evaluate(class);
        }
        let twisted = class.twisted(|i| self.ample.per_triangle[i].map(|c| n * c));
        self.localizer.evaluate(&twisted)
    }

    /// `chi(L_mu^∨ ⊗ class)`.
    pub fn tautological_pairing(&self, mu: Character, class: &LocalizedClass) -> Result<BigRational> {
        let s = self.conventions.tautological_sign;
        let twisted = class.twisted(|i| self.fan.triangles[i].ggraph.monomial(mu).map(|c| -s * c));
        self.localizer.evaluate(&twisted)
    }

    /// Entry `(mu, chi)` is `chi(L_mu^∨ ⊗ Psi(chi ⊗ O_0))`.
    pub fn duality_matrix(&self) -> Result<Vec<Vec<BigRational>>> {
        let chars: Vec<Character> = self.ctx.characters().collect();
        let classes: Vec<LocalizedClass> = chars.iter().map(|&ch| self.psi_class(ch)).collect();
        chars
            .par_iter()
            .map(|&mu| {
                classes
                    .iter()
                    .map(|class| self.tautological_pairing(mu, class))
                    .collect::<Result<Vec<_>>>()
            })
            .collect()
    }

    pub fn check_duality(&self) -> Result<()> {
        let m = self.duality_matrix()?;
        let mut bad = Vec::new();
        for (i, row) in m.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                let want = if i == j { BigRational::one() } else { BigRational::zero() };
                if *v != want {
                    bad.push(format!("({i},{j}) = {v}"));
                }
            }
        }
        if bad.is_empty() {
            Ok(())
        } else {
            Err(Error::invariant("duality", format!("off-identity entries: {}", bad.join(", "))))
        }
    }

    pub fn classify(&self, ch: Character) -> Result<PsiClassRecord> {
        let class = self.psi_class(ch);
        let values = (0..TWIST_RANGE as i64)
            .map(|n| self.euler_characteristic(&class, n))
            .collect::<Result<Vec<_>>>()?;
        let label = self.ctx.label(ch);
        if !values[0].is_zero() {
            return Err(Error::invariant(
                "euler-at-zero",
                format!("{label}: p(0) = {} != 0", values[0]),
            ));
        }
        let two = BigRational::from_integer(BigInt::from(2));
        let quadratic = (&values[2] - &two * &values[1]) / &two;
        let linear = &values[1] - &quadratic;
        for (n, v) in values.iter().enumerate() {
            let n = BigRational::from_integer(BigInt::from(n));
            if &quadratic * &n * &n + &linear * &n != *v {
                return Err(Error::invariant(
                    "hilbert-polynomial",
                    format!("{label}: values {values:?} do not lie on a quadratic through 0"),
                ));
            }
        }
        let (leading, support_dim) = if !quadratic.is_zero() {
            (&quadratic, 2)
        } else if !linear.is_zero() {
            (&linear, 1)
        } else {
            return Err(Error::invariant(
                "hilbert-polynomial",
                format!("{label}: Hilbert polynomial vanishes identically"),
            ));
        };
        let homological_degree = if leading.is_positive() { 0 } else { -1 };
        Ok(PsiClassRecord {
            character: ch,
            label,
            class,
            values,
            quadratic,
            linear,
            homological_degree,
            support_dim,
        })
    }

    pub fn report(&self) -> Result<B0Report> {
        let r = self.ctx.order();
        if r < 2 {
            return Err(Error::NoNontrivialCharacters);
        }
        let chars: Vec<Character> = self.ctx.nontrivial_characters().collect();
        let records = chars
            .par_iter()
            .map(|&ch| self.classify(ch))
            .collect::<Result<Vec<_>>>()?;
        let h0: Vec<Character> = records
            .iter()
            .filter(|rec| rec.homological_degree == 0)
            .map(|rec| rec.character)
            .collect();
        let b0 = BigRational::new(BigInt::from(h0.len()), BigInt::from(r - 1));
        Ok(B0Report {
            r,
            h0,
            b0,
            records,
            wall_degrees: self.ample.wall_degrees.clone(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::build_fan;

    fn setup(s: &str) -> (LatticeContext, Fan) {
        let ctx = LatticeContext::new(s.parse().unwrap()).unwrap();
        let fan = build_fan(&ctx).unwrap();
        (ctx, fan)
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn series_inverse() {
        let a = [q(2, 1), q(1, 1), q(0, 1), q(3, 1)];
        let b = series_inv(&a);
        let p = series_mul(&a, &b);
        assert_eq!(p, [q(1, 1), q(0, 1), q(0, 1), q(0, 1)]);
    }

    #[test]
    fn structure_sheaf_of_affine_space_has_a_pole() {
        // the class 1 at a single chart is O of C^3, not compactly supported
        let fixed = vec![FixedPoint {
            dual_basis: [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
            ample_character: [0, 0, 0],
        }];
        let loc = Localizer::new(&fixed, 1);
        let class = LocalizedClass {
            per_triangle: vec![vec![Term {
                coefficient: 1,
                exponent: [0, 0, 0],
            }]],
        };
        assert!(matches!(loc.evaluate(&class), Err(Error::Invariant { name: "compact-support", .. })));
        // the Koszul class of the origin has Euler characteristic 1
        let koszul = LocalizedClass {
            per_triangle: vec![SUBSETS
                .iter()
                .map(|s| Term {
                    coefficient: if s.iter().sum::<i64>() % 2 == 0 { 1 } else { -1 },
                    exponent: *s,
                })
                .collect()],
        };
        assert_eq!(loc.evaluate(&koszul).unwrap(), q(1, 1));
    }

    #[test]
    fn wall_degrees_order_five() {
        let (ctx, fan) = setup("1/5(1,1,3)");
        let p = ctx.junior_points();
        let wall = fan
            .walls
            .iter()
            .find(|w| {
                let e = w.endpoints.map(|v| p[v].scaled);
                e.contains(&[0, 0, 5]) && e.contains(&[1, 1, 3])
            })
            .unwrap();
        let degs: Vec<u64> = ctx
            .characters()
            .map(|ch| wall_degree(&ctx, &fan, wall, ch).unwrap())
            .collect();
        assert_eq!(degs, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn wall_degrees_klein_four() {
        let (ctx, fan) = setup("1/2(1,0,1);1/2(0,1,1)");
        let p = ctx.junior_points();
        for w in &fan.walls {
            let degs: Vec<u64> = ctx
                .characters()
                .map(|ch| wall_degree(&ctx, &fan, w, ch).unwrap())
                .collect();
            assert_eq!(degs.iter().sum::<u64>(), 1);
            // the wall facing the z corner swaps xy and z
            let ends = w.endpoints.map(|v| p[v].scaled);
            if ends.contains(&[2, 0, 2]) && ends.contains(&[0, 2, 2]) {
                let chi11 = ctx.character_from_label("χ11").unwrap();
                assert_eq!(degs[chi11.index()], 1);
            }
        }
    }

    #[test]
    fn ample_totals() {
        let (ctx, fan) = setup("1/5(1,1,3)");
        let fixed = fixed_point_data(&ctx, &fan).unwrap();
        let ample = ample_data(&ctx, &fan, &fixed).unwrap();
        assert_eq!(ample.sign, 1);
        assert!(ample.wall_degrees.iter().all(|row| row.iter().sum::<u64>() >= 1));
        let p = ctx.junior_points();
        let i = fan
            .walls
            .iter()
            .position(|w| {
                let e = w.endpoints.map(|v| p[v].scaled);
                e.contains(&[0, 0, 5]) && e.contains(&[1, 1, 3])
            })
            .unwrap();
        assert_eq!(ample.wall_degrees[i].iter().sum::<u64>(), 10);

        let (ctx, fan) = setup("1/1(0,0,0)");
        let fixed = fixed_point_data(&ctx, &fan).unwrap();
        let ample = ample_data(&ctx, &fan, &fixed).unwrap();
        assert!(ample.wall_degrees.is_empty());
    }

    #[test]
    fn trivial_character_counts_once() {
        for s in ["1/3(1,1,1)", "1/5(1,1,3)", "1/1(0,0,0)"] {
            let (ctx, fan) = setup(s);
            let k = KTheory::new(&ctx, &fan).unwrap();
            let class = k.psi_class(Character::TRIVIAL);
            assert_eq!(k.euler_characteristic(&class, 0).unwrap(), q(1, 1), "{s}");
        }
    }

    #[test]
    fn duality_row_one_third() {
        let (ctx, fan) = setup("1/3(1,1,1)");
        let k = KTheory::new(&ctx, &fan).unwrap();
        let chi1 = ctx.character_from_label("χ1").unwrap();
        let class = k.psi_class(chi1);
        let row: Vec<BigRational> = ctx
            .characters()
            .map(|mu| k.tautological_pairing(mu, &class).unwrap())
            .collect();
        assert_eq!(row, vec![q(0, 1), q(1, 1), q(0, 1)]);
    }

    #[test]
    fn duality_is_identity() {
        for s in ["1/3(1,1,1)", "1/5(1,1,3)", "1/2(1,0,1);1/2(0,1,1)", "1/6(1,1,4)", "1/1(0,0,0)"] {
            let (ctx, fan) = setup(s);
            KTheory::new(&ctx, &fan).unwrap().check_duality().unwrap();
        }
    }

    #[test]
    fn convention_search_pins_canonical() {
        // Only two sign conventions give identity pairings; the canonical one is
        // the one sending chi ⊗ O to the dual tautological bundle, which the
        // Klein four-group separates from the other: all three characters in degree 0.
        let mut survivors = Vec::new();
        for conv in Conventions::all() {
            let ok = ["1/3(1,1,1)", "1/5(1,1,3)"].iter().all(|s| {
                let (ctx, fan) = setup(s);
                KTheory::with_conventions(&ctx, &fan, conv)
                    .and_then(|k| k.check_duality())
                    .is_ok()
            });
            if ok {
                survivors.push(conv);
            }
        }
        assert_eq!(survivors.len(), 2);
        assert!(survivors.contains(&Conventions::CANONICAL));
        let (ctx, fan) = setup("1/2(1,0,1);1/2(0,1,1)");
        let shares: Vec<(Conventions, usize)> = survivors
            .iter()
            .map(|&conv| {
                let k = KTheory::with_conventions(&ctx, &fan, conv).unwrap();
                (conv, k.report().unwrap().h0.len())
            })
            .collect();
        for (conv, h0) in shares {
            assert_eq!(h0 == 3, conv == Conventions::CANONICAL, "{conv:?}");
        }
    }

    #[test]
    fn euler_value_independent_of_direction() {
        let (ctx, fan) = setup("1/7(1,2,4)");
        let k = KTheory::new(&ctx, &fan).unwrap();
        let other = Localizer::with_direction(&k.fixed, 1, [3, -5, 11]);
        for ch in ctx.characters() {
            let class = k.psi_class(ch).twisted(|i| k.ample.per_triangle[i].map(|c| 2 * c));
            assert_eq!(k.localizer.evaluate(&class).unwrap(), other.evaluate(&class).unwrap());
        }
    }

    #[test]
    fn one_third_images() {
        // chi_2 marks the exceptional P^2: O_E(-2) with A|_E = O(3); chi_1 gives a twisted cotangent sheaf in degree -1
        let (ctx, fan) = setup("1/3(1,1,1)");
        let rep = KTheory::new(&ctx, &fan).unwrap().report().unwrap();
        let r1 = &rep.records[0];
        let r2 = &rep.records[1];
        assert_eq!((r1.label.as_str(), r1.homological_degree, r1.support_dim), ("χ1", -1, 2));
        assert_eq!((r1.quadratic.clone(), r1.linear.clone()), (q(-9, 1), q(6, 1)));
        assert_eq!((r2.label.as_str(), r2.homological_degree, r2.support_dim), ("χ2", 0, 2));
        assert_eq!((r2.quadratic.clone(), r2.linear.clone()), (q(9, 2), q(-3, 2)));
        assert_eq!(rep.b0, q(1, 2));
    }

    #[test]
    fn klein_four_all_degree_zero() {
        let (ctx, fan) = setup("1/2(1,0,1);1/2(0,1,1)");
        let rep = KTheory::new(&ctx, &fan).unwrap().report().unwrap();
        assert_eq!(rep.h0.len(), 3);
        assert_eq!(rep.b0, q(1, 1));
        for rec in &rep.records {
            // each image is the structure sheaf of a curve, p(n) = n
            assert_eq!(rec.support_dim, 1);
            assert_eq!(rec.linear, q(1, 1));
        }
    }

    #[test]
    fn trivial_group_has_no_report() {
        let (ctx, fan) = setup("1/1(0,0,0)");
        assert!(matches!(
            KTheory::new(&ctx, &fan).unwrap().report(),
            Err(Error::NoNontrivialCharacters)
        ));
    }
}
