//! Truncated jet rings and the search for the least differentiation order
//! at which an autonomous system becomes algebraically inconsistent.

use std::collections::HashMap;
use std::fmt;

use log::debug;

use crate::error::{Error, Result};
use crate::groebner::{buchberger, Limits};
use crate::pfaffian::PfaffianSystem;
use crate::poly::{Monomial, Polynomial, Rational, Ring};

/// The jet `y_{i,α}`: unknown `i` differentiated `α_j` times along `x_j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JetIndex {
    pub i: usize,
    pub alpha: Vec<u32>,
}

impl JetIndex {
    pub fn new(i: usize, alpha: Vec<u32>) -> JetIndex {
        JetIndex { i, alpha }
    }

    /// `|α|`.
    pub fn order(&self) -> u32 {
        self.alpha.iter().sum()
    }

    pub fn shifted(&self, j: usize) -> JetIndex {
        let mut alpha = self.alpha.clone();
        alpha[j] += 1;
        JetIndex { i: self.i, alpha }
    }

    fn key(&self) -> (u32, &[u32], usize) {
        (self.order(), &self.alpha, self.i)
    }
}

impl fmt::Display for JetIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}; ", self.i)?;
        for (k, a) in self.alpha.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

/// Polynomial ring in all jets `y_{i,α}` with `|α| ≤ K`.
///
/// `y_{i,0}` is named like the unknown itself and `y_{i,α}` is named
/// `{y_i}_{α_1}_..._{α_m}`. Names are assigned in increasing jet order, so
/// a jet keeps its name in every ring that contains it. Higher jets come
/// first in the variable list, which makes them the larger variables under
/// grevlex.
#[derive(Debug, Clone)]
pub struct JetRing {
    unknowns: Vec<String>,
    m: usize,
    order: u32,
    ring: Ring,
    jets: Vec<JetIndex>,
    index: HashMap<JetIndex, usize>,
}

/// All `α ∈ ℕ^m` with `|α| = d`, in lexicographic order.
fn compositions(m: usize, d: u32) -> Vec<Vec<u32>> {
    if m == 1 {
        return vec![vec![d]];
    }
    let mut out = Vec::new();
    for first in 0..=d {
        for mut rest in compositions(m - 1, d - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

impl JetRing {
    pub fn new<S: AsRef<str>>(unknowns: &[S], m: usize, order: u32) -> Result<JetRing> {
        if unknowns.is_empty() || m == 0 {
            return Err(Error::InvalidRing(
                "a jet ring needs at least one unknown and one direction".into(),
            ));
        }
        let unknowns: Vec<String> = unknowns.iter().map(|s| s.as_ref().to_string()).collect();
        let mut jets = Vec::new();
        for d in 0..=order {
            for alpha in compositions(m, d) {
                for i in 0..unknowns.len() {
                    jets.push(JetIndex::new(i, alpha.clone()));
                }
            }
        }
        debug_assert!(jets.windows(2).all(|w| w[0].key() < w[1].key()));

        let mut names: Vec<String> = unknowns.clone();
        for jet in &jets[unknowns.len()..] {
            let mut name = unknowns[jet.i].clone();
            for a in &jet.alpha {
                name.push_str(&format!("_{a}"));
            }
            while names.contains(&name) {
                name.push('_');
            }
            names.push(name);
        }
        jets.reverse();
        names.reverse();
        let ring = Ring::new(&names)?;
        let index = jets
            .iter()
            .cloned()
            .enumerate()
            .map(|(k, j)| (j, k))
            .collect();
        Ok(JetRing {
            unknowns,
            m,
            order,
            ring,
            jets,
            index,
        })
    }

    /// The jet ring of one order higher over the same unknowns.
    pub fn raised(&self) -> JetRing {
        JetRing::new(&self.unknowns, self.m, self.order + 1).expect("same unknowns")
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn n(&self) -> usize {
        self.unknowns.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Truncation order `K`.
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn unknowns(&self) -> &[String] {
        &self.unknowns
    }

    /// Jets in variable order.
    pub fn jets(&self) -> &[JetIndex] {
        &self.jets
    }

    pub fn var_of(&self, jet: &JetIndex) -> Option<usize> {
        self.index.get(jet).copied()
    }

    pub fn jet(&self, i: usize, alpha: &[u32]) -> Result<Polynomial> {
        let idx = JetIndex::new(i, alpha.to_vec());
        match self.var_of(&idx) {
            Some(v) => Ok(Polynomial::var(&self.ring, v)),
            None => Err(Error::InvalidRing(format!("jet {idx} is not in the ring"))),
        }
    }

    /// `y_{i,0}` for each unknown, as a map from a ring over the unknowns.
    fn zero_jets(&self) -> Vec<usize> {
        let zero = vec![0; self.m];
        (0..self.n())
            .map(|i| self.index[&JetIndex::new(i, zero.clone())])
            .collect()
    }

    /// Reads a polynomial over the unknowns as a polynomial in order-zero jets.
    pub fn from_unknowns(&self, p: &Polynomial) -> Result<Polynomial> {
        if p.ring().vars() != self.unknowns.as_slice() {
            return Err(Error::RingMismatch);
        }
        Ok(p.map_vars(&self.ring, &self.zero_jets()))
    }

    /// Moves a polynomial from a jet ring of lower or equal order.
    pub fn lift(&self, from: &JetRing, p: &Polynomial) -> Result<Polynomial> {
        if from.unknowns != self.unknowns || from.m != self.m || from.order > self.order {
            return Err(Error::RingMismatch);
        }
        if p.ring() != &from.ring {
            return Err(Error::RingMismatch);
        }
        let map: Vec<usize> = from.jets.iter().map(|j| self.index[j]).collect();
        Ok(p.map_vars(&self.ring, &map))
    }

    /// `∂h/∂x_j` computed inside this ring; fails if `h` involves a jet of
    /// top order in a variable it depends on.
    fn derive_in(&self, h: &Polynomial, j: usize) -> Result<Polynomial> {
        let mut terms: Vec<(Monomial, Rational)> = Vec::new();
        for (mono, c) in h.terms() {
            for v in mono.support() {
                let target = self.var_of(&self.jets[v].shifted(j)).ok_or_else(|| {
                    Error::InvalidRing(format!(
                        "derivative of jet {} exceeds truncation order {}",
                        self.jets[v], self.order
                    ))
                })?;
                let e = mono.exponents()[v];
                let mut exps = mono.exponents().to_vec();
                exps[v] -= 1;
                exps[target] += 1;
                if exps[target] > self.ring.max_exponent() {
                    return Err(Error::ExponentOverflow {
                        limit: self.ring.max_exponent(),
                    });
                }
                terms.push((
                    Monomial::from_exponents(exps),
                    c * Rational::from_integer(e.into()),
                ));
            }
        }
        Ok(Polynomial::from_terms(&self.ring, terms))
    }
}

/// Formal total derivative `∂h/∂x_j = Σ ∂h/∂y_{i,α} · y_{i,α+e_j}` of a
/// polynomial over `from`, returned over `to` (zero-based `j`).
pub fn jet_derivative(
    from: &JetRing,
    to: &JetRing,
    h: &Polynomial,
    j: usize,
) -> Result<Polynomial> {
    if j >= from.m {
        return Err(Error::IndexOutOfRange {
            index: j,
            len: from.m,
        });
    }
    if to.order <= from.order {
        return Err(Error::InvalidRing(format!(
            "target jet ring of order {} cannot hold derivatives from order {}",
            to.order, from.order
        )));
    }
    to.derive_in(&to.lift(from, h)?, j)
}

/// All derivatives of order at most `k` of `y_{i,e_j} - f_ij` and of the
/// constraints, over the jet ring of order `k + 1`.
pub fn truncated_system(system: &PfaffianSystem, k: u32) -> Result<(JetRing, Vec<Polynomial>)> {
    if !system.is_autonomous() {
        return Err(Error::NonAutonomous);
    }
    let sys = system.restrict_to_unknowns()?;
    let (n, m) = (sys.n(), sys.m());
    let jr = JetRing::new(sys.y_vars(), m, k + 1)?;

    let mut base = Vec::with_capacity(n * m + sys.g().len());
    for i in 0..n {
        for j in 0..m {
            let mut e = vec![0; m];
            e[j] = 1;
            base.push(jr.jet(i, &e)?.try_sub(&jr.from_unknowns(&sys.f()[i][j])?)?);
        }
    }
    for g in sys.g() {
        base.push(jr.from_unknowns(g)?);
    }

    // Each ∂^α is reached once by differentiating along nondecreasing j.
    let mut out = base.clone();
    let mut layer: Vec<(Polynomial, usize)> = base.into_iter().map(|p| (p, 0)).collect();
    for _ in 0..k {
        let mut next = Vec::new();
        for (p, first) in &layer {
            for j in *first..m {
                let d = jr.derive_in(p, j)?;
                out.push(d.clone());
                next.push((d, j));
            }
        }
        layer = next;
    }
    Ok((jr, out))
}

/// Whether 1 lies in the ideal of `truncated_system(system, k)`.
pub fn is_certificate_order(system: &PfaffianSystem, k: u32, limits: &Limits) -> Result<bool> {
    let (jr, gens) = truncated_system(system, k)?;
    Ok(buchberger(jr.ring(), &gens, limits)?.is_unit())
}

/// The least `k ≤ k_max` at which the truncated system is inconsistent, or
/// `None` if there is none.
pub fn minimal_order(system: &PfaffianSystem, k_max: u32, limits: &Limits) -> Result<Option<u32>> {
    if !system.is_autonomous() {
        return Err(Error::NonAutonomous);
    }
    for k in 0..=k_max {
        let unit = is_certificate_order(system, k, limits)?;
        debug!(
            "jet order {k}: {}",
            if unit { "inconsistent" } else { "consistent" }
        );
        if unit {
            return Ok(Some(k));
        }
    }
    Ok(None)
}
