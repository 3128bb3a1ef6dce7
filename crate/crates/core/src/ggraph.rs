//! Torus-fixed G-clusters: for each character class, the monomial that is
//! simultaneously minimal on every ray of a cone.

use std::fmt;

use crate::group::{Character, Exponent, LatticeContext};

/// Monomial basis of a torus-fixed G-cluster attached to a cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GGraph {
    /// Indexed by character.
    pub assignment: Vec<Exponent>,
    /// Junior-point indices of the cone's rays.
    pub cone: [usize; 3],
}

impl GGraph {
    pub fn monomial(&self, ch: Character) -> Exponent {
        self.assignment[ch.index()]
    }

    /// Checks the structural invariants: one exponent per class, trivial class at the
    /// origin, coordinates below `r`, and closure under taking divisors.
    pub fn check(&self, ctx: &LatticeContext) -> Result<(), String> {
        let r = ctx.order() as i64;
        if self.assignment.len() as u64 != ctx.order() {
            return Err(format!("{} monomials for {} classes", self.assignment.len(), r));
        }
        if self.assignment[0] != [0, 0, 0] {
            return Err("trivial character is not assigned 1".into());
        }
        for (i, e) in self.assignment.iter().enumerate() {
            if ctx.character_of(e).index() != i {
                return Err(format!("{e:?} assigned to the wrong class"));
            }
            if e.iter().any(|&c| !(0..r).contains(&c)) {
                return Err(format!("{e:?} leaves the box [0,{r})^3"));
            }
            for a in 0..=e[0] {
                for b in 0..=e[1] {
                    for c in 0..=e[2] {
                        let d = [a, b, c];
                        if self.assignment[ctx.character_of(&d).index()] != d {
                            return Err(format!("divisor {d:?} of {e:?} is not in the G-graph"));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConeFailure {
    /// No monomial of this class is minimal on all three rays.
    NoMinimizer(Character),
    /// Several monomials tie on all rays; impossible on a full-dimensional cone.
    NonUnique(Character),
}

impl fmt::Display for ConeFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConeFailure::NoMinimizer(c) => write!(f, "no simultaneous minimizer for character {}", c.0),
            ConeFailure::NonUnique(c) => write!(f, "non-unique simultaneous minimizer for character {}", c.0),
        }
    }
}

/// Per-class minima of `<e, u>` over the box `[0, r)^3`, for every junior point `u`.
///
/// Reducing an exponent by `r` keeps its class, so the box holds every minimizer.
pub struct MinimaTable<'a> {
    ctx: &'a LatticeContext,
    members: Vec<Vec<Exponent>>,
    /// `[class][junior]` minimum of `r * <e, u>`.
    minima: Vec<Vec<i64>>,
    /// `[class][junior]` indices into `members[class]` attaining the minimum.
    argmin: Vec<Vec<Vec<u32>>>,
}

impl<'a> MinimaTable<'a> {
    pub fn new(ctx: &'a LatticeContext) -> Self {
        let r = ctx.order() as i64;
        let n = ctx.order() as usize;
        let mut members: Vec<Vec<Exponent>> = vec![Vec::new(); n];
        for a in 0..r {
            for b in 0..r {
                for c in 0..r {
                    let e = [a, b, c];
                    members[ctx.character_of(&e).index()].push(e);
                }
            }
        }
        let junior = ctx.junior_points();
        let mut minima = vec![vec![i64::MAX; junior.len()]; n];
        let mut argmin = vec![vec![Vec::new(); junior.len()]; n];
        for (class, mem) in members.iter().enumerate() {
            for (j, u) in junior.iter().enumerate() {
                let mut best = i64::MAX;
                let mut arg = Vec::new();
                for (k, e) in mem.iter().enumerate() {
                    let v = u.pair_scaled(e);
                    if v < best {
                        best = v;
                        arg.clear();
                    }
                    if v == best {
                        arg.push(k as u32);
                    }
                }
                minima[class][j] = best;
                argmin[class][j] = arg;
            }
        }
        MinimaTable {
            ctx,
            members,
            minima,
            argmin,
        }
    }

    pub fn context(&self) -> &'a LatticeContext {
        self.ctx
    }

    /// Minimum of `r * <e, u>` over the class, at junior point `vertex`.
    pub fn minimum(&self, ch: Character, vertex: usize) -> i64 {
        self.minima[ch.index()][vertex]
    }

    /// All exponents of class `ch` in the box that are minimal at every listed junior point.
    pub fn class_minimizers(&self, ch: Character, vertices: &[usize]) -> Vec<Exponent> {
        assert!(!vertices.is_empty(), "at least one vertex is required");
        let c = ch.index();
        let pivot = *vertices
            .iter()
            .min_by_key(|&&v| self.argmin[c][v].len())
            .expect("nonempty");
        let junior = self.ctx.junior_points();
        let mut out: Vec<Exponent> = self.argmin[c][pivot]
            .iter()
            .map(|&k| self.members[c][k as usize])
            .filter(|e| {
                vertices
                    .iter()
                    .all(|&v| junior[v].pair_scaled(e) == self.minima[c][v])
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// The G-graph of the cone over `triangle`, if every class has a simultaneous minimizer.
    pub fn ggraph_for_cone(&self, triangle: [usize; 3]) -> Result<GGraph, ConeFailure> {
        let mut assignment = Vec::with_capacity(self.members.len());
        for ch in self.ctx.characters() {
            let mins = self.class_minimizers(ch, &triangle);
            match mins.len() {
                0 => return Err(ConeFailure::NoMinimizer(ch)),
                1 => assignment.push(mins[0]),
                _ => return Err(ConeFailure::NonUnique(ch)),
            }
        }
        Ok(GGraph {
            assignment,
            cone: triangle,
        })
    }
}
