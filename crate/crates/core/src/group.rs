//! Diagonal abelian subgroups of `SL_3`, their overlattice `N`, the dual
//! lattice `M` of invariant exponents, the character group `Z^3 / M` and the
//! lattice points of the junior simplex.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{det3, hermite_rows, inverse_rational, Mat3};

/// Exponent vector of a Laurent monomial `x^a y^b z^c`.
pub type Exponent = [i64; 3];

/// One generator `1/order (a, b, c)`, i.e. `diag(z^a, z^b, z^c)` with `z` a primitive `order`-th root of unity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Generator {
    pub order: u64,
    pub weights: [u64; 3],
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupSpec {
    pub generators: Vec<Generator>,
}

impl GroupSpec {
    /// Cyclic group `1/r (a, b, c)`.
    pub fn cyclic(order: u64, weights: [u64; 3]) -> Result<Self> {
        Self::new(vec![Generator { order, weights }])
    }

    pub fn new(generators: Vec<Generator>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::Parse {
                pos: 0,
                msg: "expected at least one generator".into(),
            });
        }
        let mut out = Vec::with_capacity(generators.len());
        for (index, g) in generators.into_iter().enumerate() {
            if g.order == 0 {
                return Err(Error::ZeroOrder { index });
            }
            let weights = g.weights.map(|w| w % g.order);
            let sum: u64 = g.weights.iter().sum();
            if !sum.is_multiple_of(g.order) {
                let [a, b, c] = g.weights;
                return Err(Error::Determinant {
                    index,
                    order: g.order,
                    a,
                    b,
                    c,
                    sum,
                });
            }
            out.push(Generator {
                order: g.order,
                weights,
            });
        }
        Ok(GroupSpec { generators: out })
    }

    /// The same group with the coordinate axes permuted: new axis `i` is old axis `perm[i]`.
    pub fn permuted(&self, perm: [usize; 3]) -> GroupSpec {
        GroupSpec {
            generators: self
                .generators
                .iter()
                .map(|g| Generator {
                    order: g.order,
                    weights: perm.map(|i| g.weights[i]),
                })
                .collect(),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            let [a, b, c] = g.weights;
            write!(f, "1/{}({},{},{})", g.order, a, b, c)?;
        }
        Ok(())
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_group_spec(s)
    }
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl Cursor<'_> {
    fn skip_ws(&mut self) {
        while self.text[self.pos..].starts_with(|c: char| c.is_whitespace()) {
            self.pos += self.text[self.pos..].chars().next().map_or(1, char::len_utf8);
        }
    }

    fn fail<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn expect(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        if self.text[self.pos..].starts_with(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            self.fail(format!("expected `{c}`"))
        }
    }

    fn number(&mut self) -> Result<u64> {
        self.skip_ws();
        let digits = self.text[self.pos..].bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return self.fail("expected a nonnegative integer");
        }
        let value = self.text[self.pos..self.pos + digits]
            .parse::<u64>()
            .or_else(|_| self.fail("integer out of range"))?;
        self.pos += digits;
        Ok(value)
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos == self.text.len()
    }
}

/// Parse `1/<r>(<a>,<b>,<c>)` generators separated by `;`.
pub fn parse_group_spec(text: &str) -> Result<GroupSpec> {
    let mut cur = Cursor { text, pos: 0 };
    let mut generators = Vec::new();
    loop {
        let one = cur.number()?;
        if one != 1 {
            return Err(Error::Parse {
                pos: cur.pos,
                msg: "generator must start with `1/`".into(),
            });
        }
        cur.expect('/')?;
        let order = cur.number()?;
        cur.expect('(')?;
        let a = cur.number()?;
        cur.expect(',')?;
        let b = cur.number()?;
        cur.expect(',')?;
        let c = cur.number()?;
        cur.expect(')')?;
        generators.push(Generator {
            order,
            weights: [a, b, c],
        });
        if cur.at_end() {
            break;
        }
        cur.expect(';')?;
    }
    GroupSpec::new(generators)
}

/// A character of `G`, as a dense index into the character group of a [`LatticeContext`].
///
/// Index 0 is always the trivial character.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Character(pub u32);

impl Character {
    pub const TRIVIAL: Character = Character(0);

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn is_trivial(self) -> bool {
        self.0 == 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Axis {
    X,
    Y,
    Z,
}

/// A lattice point of `N` in the junior simplex, stored as `r * v` with `r = |G|`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct JuniorPoint {
    pub scaled: [i64; 3],
    pub corner: Option<Axis>,
}

impl JuniorPoint {
    /// Lies on a side of the simplex (some coordinate vanishes).
    pub fn on_boundary(&self) -> bool {
        self.scaled.contains(&0)
    }

    pub fn coords(&self, r: u64) -> [BigRational; 3] {
        self.scaled
            .map(|c| BigRational::new(BigInt::from(c), BigInt::from(r)))
    }

    /// `r * <e, v>`.
    pub fn pair_scaled(&self, e: &Exponent) -> i64 {
        e[0] * self.scaled[0] + e[1] * self.scaled[1] + e[2] * self.scaled[2]
    }
}

/// Formats a rational as `p/q`, or `p` when the denominator is one.
pub fn fraction_string(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Exact lattice data attached to a group: immutable once built.
#[derive(Clone, Debug)]
pub struct LatticeContext {
    spec: GroupSpec,
    order: u64,
    /// `r * v_g` for every group element, coordinates in `[0, r)`.
    elements: Vec<[i64; 3]>,
    n_basis: Mat3<BigRational>,
    m_basis: Mat3<i64>,
    residues: Vec<Vec<u64>>,
    index: HashMap<Vec<u64>, u32>,
    add_table: Vec<u32>,
    axis_chars: [Character; 3],
    junior: Vec<JuniorPoint>,
}

impl LatticeContext {
    pub fn new(spec: GroupSpec) -> Result<Self> {
        let gens = &spec.generators;
        let lcm = gens.iter().fold(1u64, |acc, g| acc.lcm(&g.order));
        let lcm_i = i64::try_from(lcm).map_err(|_| Error::invariant("group-order", "generator orders too large"))?;

        // Closure of the generator vectors under addition mod 1, scaled by lcm.
        let gen_scaled: Vec<[i64; 3]> = gens
            .iter()
            .map(|g| g.weights.map(|w| (w * (lcm / g.order)) as i64))
            .collect();
        let mut seen: BTreeSet<[i64; 3]> = BTreeSet::new();
        let mut stack = vec![[0i64; 3]];
        seen.insert([0; 3]);
        while let Some(e) = stack.pop() {
            for g in &gen_scaled {
                let n = [0, 1, 2].map(|i| (e[i] + g[i]).rem_euclid(lcm_i));
                if seen.insert(n) {
                    stack.push(n);
                }
            }
        }
        let order = seen.len() as u64;
        let r = order as i64;
        let elements: Vec<[i64; 3]> = seen
            .iter()
            .map(|v| v.map(|c| c * r / lcm_i))
            .collect();
        for (v, s) in elements.iter().zip(seen.iter()) {
            if v.iter().zip(s.iter()).any(|(&a, &b)| a * lcm_i != b * r) {
                return Err(Error::invariant(
                    "element-denominator",
                    format!("element {s:?}/{lcm} has a denominator not dividing |G| = {order}"),
                ));
            }
            if v.iter().sum::<i64>() % r != 0 {
                return Err(Error::invariant(
                    "integer-coordinate-sum",
                    format!("element {v:?}/{order} has non-integral coordinate sum"),
                ));
            }
        }

        // N = Z^3 + sum Z v_g, via Hermite normal form of lcm * (generators ; identity).
        let mut rows: Vec<[BigInt; 3]> = gen_scaled.iter().map(|g| g.map(BigInt::from)).collect();
        for i in 0..3 {
            let mut row = [BigInt::zero(), BigInt::zero(), BigInt::zero()];
            row[i] = BigInt::from(lcm);
            rows.push(row);
        }
        let hnf = hermite_rows(&rows);
        if hnf.len() != 3 {
            return Err(Error::invariant("n-rank", "overlattice does not have rank 3"));
        }
        let denom = BigInt::from(lcm);
        let n_basis: Mat3<BigRational> = [0, 1, 2].map(|i| {
            [0, 1, 2].map(|j| BigRational::new(hnf[i][j].clone(), denom.clone()))
        });
        let det = det3(&n_basis);
        let index_check = BigRational::one() / det.abs();
        if index_check != BigRational::from_integer(BigInt::from(order)) {
            return Err(Error::invariant(
                "lattice-index",
                format!("[N : Z^3] = {index_check} but the group has {order} elements"),
            ));
        }
        let inv = inverse_rational(&n_basis).expect("nonzero determinant");
        // Rows of m_basis are the columns of inv: <n_i, m_j> = delta_ij.
        let mut m_basis = [[0i64; 3]; 3];
        for j in 0..3 {
            for i in 0..3 {
                let q = &inv[i][j];
                if !q.is_integer() {
                    return Err(Error::invariant("m-integral", "dual of N is not contained in Z^3"));
                }
                m_basis[j][i] = q.to_integer().to_i64().ok_or_else(|| Error::invariant("m-integral", "overflow"))?;
            }
        }

        // Character group: residues of e under each generator.
        let residue_of = |e: &Exponent| -> Vec<u64> {
            gens.iter()
                .map(|g| {
                    let s: i128 = (0..3).map(|i| g.weights[i] as i128 * e[i] as i128).sum();
                    s.rem_euclid(g.order as i128) as u64
                })
                .collect()
        };
        let axes = [[1, 0, 0], [0, 1, 0], [0, 0, 1]].map(|e| residue_of(&e));
        let mut classes: BTreeSet<Vec<u64>> = BTreeSet::new();
        let zero = vec![0u64; gens.len()];
        classes.insert(zero.clone());
        let mut stack = vec![zero];
        let add_res = |a: &[u64], b: &[u64]| -> Vec<u64> {
            gens.iter()
                .enumerate()
                .map(|(j, g)| (a[j] + b[j]) % g.order)
                .collect()
        };
        while let Some(c) = stack.pop() {
            for ax in &axes {
                let n = add_res(&c, ax);
                if classes.insert(n.clone()) {
                    stack.push(n);
                }
            }
        }
        if classes.len() as u64 != order {
            return Err(Error::invariant(
                "character-count",
                format!("{} character classes but |G| = {order}", classes.len()),
            ));
        }
        let residues: Vec<Vec<u64>> = classes.into_iter().collect();
        let index: HashMap<Vec<u64>, u32> = residues
            .iter()
            .enumerate()
            .map(|(i, c)| (c.clone(), i as u32))
            .collect();
        let n = residues.len();
        let mut add_table = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                add_table[i * n + j] = index[&add_res(&residues[i], &residues[j])];
            }
        }
        let axis_chars = axes.map(|a| Character(index[&a]));

        let mut junior: Vec<JuniorPoint> = elements
            .iter()
            .filter(|v| v.iter().sum::<i64>() == r && v.iter().all(|&c| c < r))
            .map(|v| JuniorPoint {
                scaled: *v,
                corner: None,
            })
            .collect();
        for (axis, pos) in [(Axis::X, 0), (Axis::Y, 1), (Axis::Z, 2)] {
            let mut scaled = [0; 3];
            scaled[pos] = r;
            junior.push(JuniorPoint {
                scaled,
                corner: Some(axis),
            });
        }
        junior.sort_by_key(|a| a.scaled);

        Ok(LatticeContext {
            spec,
            order,
            elements,
            n_basis,
            m_basis,
            residues,
            index,
            add_table,
            axis_chars,
            junior,
        })
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    /// `r = |G|`.
    pub fn order(&self) -> u64 {
        self.order
    }

    /// `r * v_g` for every group element.
    pub fn group_elements(&self) -> &[[i64; 3]] {
        &self.elements
    }

    /// Rows generate `N`.
    pub fn n_basis(&self) -> &Mat3<BigRational> {
        &self.n_basis
    }

    /// Rows generate `M = Hom(N, Z)`; row `j` is dual to row `j` of [`Self::n_basis`].
    pub fn m_basis(&self) -> &Mat3<i64> {
        &self.m_basis
    }

    pub fn junior_points(&self) -> &[JuniorPoint] {
        &self.junior
    }

    pub fn corner_index(&self, axis: Axis) -> usize {
        self.junior
            .iter()
            .position(|p| p.corner == Some(axis))
            .expect("corners are always present")
    }

    pub fn characters(&self) -> impl Iterator<Item = Character> {
        (0..self.residues.len() as u32).map(Character)
    }

    pub fn nontrivial_characters(&self) -> impl Iterator<Item = Character> {
        self.characters().skip(1)
    }

    pub fn character_of(&self, e: &Exponent) -> Character {
        let [cx, cy, cz] = self.axis_chars;
        let acc = self.scale(cx, e[0]);
        let acc = self.add(acc, self.scale(cy, e[1]));
        self.add(acc, self.scale(cz, e[2]))
    }

    pub fn add(&self, a: Character, b: Character) -> Character {
        Character(self.add_table[a.index() * self.residues.len() + b.index()])
    }

    pub fn neg(&self, a: Character) -> Character {
        let n = self.residues.len();
        let row = &self.add_table[a.index() * n..(a.index() + 1) * n];
        Character(row.iter().position(|&c| c == 0).expect("group inverse exists") as u32)
    }

    pub fn sub(&self, a: Character, b: Character) -> Character {
        self.add(a, self.neg(b))
    }

    /// `k * a` for any integer `k`.
    pub fn scale(&self, a: Character, k: i64) -> Character {
        let n = self.residues.len() as i64;
        let k = k.rem_euclid(n.max(1));
        let mut acc = Character::TRIVIAL;
        let mut base = a;
        let mut k = k as u64;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(acc, base);
            }
            base = self.add(base, base);
            k >>= 1;
        }
        acc
    }

    /// Values of the character on each generator, in `Z/order_j`.
    pub fn residues(&self, ch: Character) -> &[u64] {
        &self.residues[ch.index()]
    }

    /// `chi_j` for cyclic groups, `chi_{j1 j2 ...}` for several generators.
    pub fn label(&self, ch: Character) -> String {
        let res = self.residues(ch);
        if res.len() == 1 {
            format!("χ{}", res[0])
        } else if self.spec.generators.iter().all(|g| g.order <= 10) {
            let digits: String = res.iter().map(|d| d.to_string()).collect();
            format!("χ{digits}")
        } else {
            let parts: Vec<String> = res.iter().map(|d| d.to_string()).collect();
            format!("χ({})", parts.join(","))
        }
    }

    pub fn character_from_label(&self, label: &str) -> Option<Character> {
        let body = label.strip_prefix("χ")?;
        let res: Vec<u64> = if let Some(inner) = body.strip_prefix('(').and_then(|b| b.strip_suffix(')')) {
            inner.split(',').map(|p| p.trim().parse().ok()).collect::<Option<_>>()?
        } else if self.residues[0].len() == 1 {
            vec![body.parse().ok()?]
        } else {
            body.chars().map(|c| c.to_digit(10).map(u64::from)).collect::<Option<_>>()?
        };
        self.index.get(&res).map(|&i| Character(i))
    }

    /// A representative exponent of the class inside the box `[0, r)^3`.
    pub fn representative(&self, ch: Character) -> Exponent {
        let r = self.order as i64;
        for a in 0..r {
            for b in 0..r {
                for c in 0..r {
                    if self.character_of(&[a, b, c]) == ch {
                        return [a, b, c];
                    }
                }
            }
        }
        unreachable!("every character is hit by a monomial in the box")
    }

    /// `<m, n>` is integral for every row `m` of the M basis and every group element `n`.
    pub fn check_duality(&self) -> Result<()> {
        let r = self.order as i64;
        for m in &self.m_basis {
            for v in &self.elements {
                let s: i64 = (0..3).map(|i| m[i] * v[i]).sum();
                if s % r != 0 {
                    return Err(Error::invariant(
                        "m-pairing",
                        format!("{m:?} pairs non-integrally with {v:?}/{r}"),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Coordinates of the junior point `idx` in the N basis (integers).
    pub fn n_coordinates(&self, idx: usize) -> [i64; 3] {
        let r = self.order as i64;
        let v = self.junior[idx].scaled;
        self.m_basis.map(|m| {
            let s: i64 = (0..3).map(|i| m[i] * v[i]).sum();
            debug_assert_eq!(s % r, 0);
            s / r
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(s: &str) -> LatticeContext {
        LatticeContext::new(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn parses_generators() {
        let g: GroupSpec = "1/5(1,1,3)".parse().unwrap();
        assert_eq!(g.generators, vec![Generator { order: 5, weights: [1, 1, 3] }]);
        let g: GroupSpec = " 1/2(1,0,1) ; 1/2( 0, 1, 1 )".parse().unwrap();
        assert_eq!(g.generators.len(), 2);
        assert_eq!(g.generators[1].weights, [0, 1, 1]);
        assert_eq!(g.to_string(), "1/2(1,0,1);1/2(0,1,1)");
    }

    #[test]
    fn weights_are_reduced() {
        let g: GroupSpec = "1/5(6,1,8)".parse().unwrap();
        assert_eq!(g.generators[0].weights, [1, 1, 3]);
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(matches!("1/5(1,1,2)".parse::<GroupSpec>(), Err(Error::Determinant { sum: 4, .. })));
        assert!(matches!("1/0(0,0,0)".parse::<GroupSpec>(), Err(Error::ZeroOrder { .. })));
        assert!(matches!("1/5(1,1)".parse::<GroupSpec>(), Err(Error::Parse { .. })));
        assert!(matches!("2/5(1,1,3)".parse::<GroupSpec>(), Err(Error::Parse { .. })));
        assert!(matches!("1/5(1,1,3);".parse::<GroupSpec>(), Err(Error::Parse { .. })));
        assert!(matches!("".parse::<GroupSpec>(), Err(Error::Parse { .. })));
        assert!(matches!("1/5(-1,1,3)".parse::<GroupSpec>(), Err(Error::Parse { .. })));
    }

    #[test]
    fn group_orders() {
        assert_eq!(ctx("1/5(1,1,3)").order(), 5);
        assert_eq!(ctx("1/2(1,0,1);1/2(0,1,1)").order(), 4);
        assert_eq!(ctx("1/1(0,0,0)").order(), 1);
        // generator of order 2 written with denominator 4
        assert_eq!(ctx("1/4(2,2,0)").order(), 2);
        // redundant generators
        assert_eq!(ctx("1/2(1,0,1);1/2(1,0,1)").order(), 2);
    }

    #[test]
    fn trivial_group_lattices() {
        let c = ctx("1/1(0,0,0)");
        let one = BigRational::one();
        let zero = BigRational::zero();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(c.n_basis()[i][j], if i == j { one.clone() } else { zero.clone() });
                assert_eq!(c.m_basis()[i][j], i64::from(i == j));
            }
        }
        assert_eq!(c.junior_points().len(), 3);
    }

    #[test]
    fn characters_of_monomials() {
        let c = ctx("1/5(1,1,3)");
        assert_eq!(c.label(c.character_of(&[0, 0, 1])), "χ3");
        assert_eq!(c.character_of(&[1, 1, 1]), Character::TRIVIAL);
        assert_eq!(c.label(Character::TRIVIAL), "χ0");
        let k = ctx("1/2(1,0,1);1/2(0,1,1)");
        assert_eq!(k.label(k.character_of(&[1, 1, 0])), "χ11");
        assert_eq!(k.label(k.character_of(&[1, 0, 0])), "χ10");
        assert_eq!(k.label(Character::TRIVIAL), "χ00");
    }

    #[test]
    fn labels_round_trip() {
        for s in ["1/5(1,1,3)", "1/2(1,0,1);1/2(0,1,1)", "1/12(1,1,10);1/3(1,2,0)"] {
            let c = ctx(s);
            for ch in c.characters() {
                assert_eq!(c.character_from_label(&c.label(ch)), Some(ch), "{s}");
            }
        }
    }

    #[test]
    fn junior_points_of_examples() {
        let c = ctx("1/5(1,1,3)");
        let pts: Vec<[i64; 3]> = c.junior_points().iter().map(|p| p.scaled).collect();
        assert_eq!(pts, vec![[0, 0, 5], [0, 5, 0], [1, 1, 3], [2, 2, 1], [5, 0, 0]]);

        let k = ctx("1/2(1,0,1);1/2(0,1,1)");
        let pts: Vec<[i64; 3]> = k.junior_points().iter().map(|p| p.scaled).collect();
        // midpoints (scaled by r = 4)
        assert_eq!(
            pts,
            vec![[0, 0, 4], [0, 2, 2], [0, 4, 0], [2, 0, 2], [2, 2, 0], [4, 0, 0]]
        );

        let s = ctx("1/6(1,1,4)");
        let pts: Vec<[i64; 3]> = s.junior_points().iter().map(|p| p.scaled).collect();
        assert_eq!(
            pts,
            vec![[0, 0, 6], [0, 6, 0], [1, 1, 4], [2, 2, 2], [3, 3, 0], [6, 0, 0]]
        );
        let mid = s.junior_points().iter().find(|p| p.scaled == [3, 3, 0]).unwrap();
        assert!(mid.on_boundary());
        assert!(mid.corner.is_none());
    }

    #[test]
    fn m_basis_is_dual_to_n_basis() {
        for s in ["1/5(1,1,3)", "1/2(1,0,1);1/2(0,1,1)", "1/6(1,1,4)", "1/12(1,1,10);1/3(1,2,0)"] {
            let c = ctx(s);
            c.check_duality().unwrap();
            for i in 0..3 {
                for j in 0..3 {
                    let s: BigRational = (0..3)
                        .map(|k| &c.n_basis()[i][k] * BigRational::from_integer(c.m_basis()[j][k].into()))
                        .fold(BigRational::zero(), |a, b| a + b);
                    assert_eq!(s, if i == j { BigRational::one() } else { BigRational::zero() });
                }
            }
        }
    }

    #[test]
    fn character_kernel_is_m() {
        let c = ctx("1/6(1,1,4)");
        for m in c.m_basis() {
            assert_eq!(c.character_of(m), Character::TRIVIAL);
        }
        let r = c.order() as i64;
        let mut seen = BTreeSet::new();
        for a in 0..r {
            for b in 0..r {
                for d in 0..r {
                    seen.insert(c.character_of(&[a, b, d]));
                }
            }
        }
        assert_eq!(seen.len() as u64, r as u64);
    }
}
