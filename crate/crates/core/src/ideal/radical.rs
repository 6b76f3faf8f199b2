//! Radical computation by dimension-driven splitting.
//!
//! For an ideal `I` with maximal independent set `u` and dependent
//! variables `v`, the extension of `I` to `Q(u)[v]` is zero-dimensional.
//! Adding the squarefree part (over `Q(u)`) of a nonzero element of
//! `I ∩ Q[u, v_k]` for every dependent `v_k` makes that extension radical.
//! Saturating by a product `h ∈ Q[u]` of block-order leading coefficients
//! contracts it back, and
//!
//! ```text
//! √I = (J : h^∞) ∩ √(I + (h))
//! ```
//!
//! where the second branch loses every top-dimensional component on which
//! `u` is independent. No factorization is needed, only elimination and
//! univariate gcds with polynomial coefficients.

use super::{independent_set, Ideal};
use crate::error::{Error, Result};
use crate::groebner::{buchberger, eliminate, Limits};
use crate::poly::{MonomialOrder, Polynomial, Ring};

/// Each split removes at least one component, so this only trips on a bug
/// or on ideals far beyond desk scale.
const MAX_SPLIT_DEPTH: usize = 64;

pub(super) fn radical(ideal: &Ideal) -> Result<Ideal> {
    let grevlex = ideal.ring().reordered(MonomialOrder::Grevlex)?;
    let work =
        Ideal::new(&grevlex, ideal.generators().to_vec())?.with_limits(ideal.limits().clone());
    let root = split(&work, 0)?;
    let gens = root
        .generators()
        .iter()
        .map(|p| p.with_order(ideal.ring().order()))
        .collect::<Result<Vec<_>>>()?;
    Ok(Ideal::new(ideal.ring(), gens)?.with_limits(ideal.limits().clone()))
}

fn split(ideal: &Ideal, depth: usize) -> Result<Ideal> {
    if depth > MAX_SPLIT_DEPTH {
        return Err(Error::Internal(format!(
            "radical splitting exceeded depth {MAX_SPLIT_DEPTH}"
        )));
    }
    let ring = ideal.ring().clone();
    let limits = ideal.limits().clone();
    let gb = ideal.groebner()?;
    if gb.is_unit() {
        return Ok(Ideal::unit(&ring).with_limits(limits));
    }
    if gb.is_empty() {
        return Ok(Ideal::zero(&ring).with_limits(limits));
    }
    let basis = gb.basis().to_vec();
    let n = ring.nvars();
    let free = independent_set(n, &gb.leading_monomials());
    let dependent: Vec<usize> = (0..n).filter(|v| !free.contains(v)).collect();

    let mut extra = Vec::new();
    for &v in &dependent {
        let others: Vec<usize> = dependent.iter().copied().filter(|&w| w != v).collect();
        let relations = eliminate(&basis, &others, &limits)?;
        let relation = relations
            .iter()
            .filter(|p| p.uses_var(v))
            .min_by_key(|p| (p.degree_in(v), p.len(), p.total_degree()))
            .ok_or_else(|| {
                Error::Internal(format!(
                    "no relation between {} and the independent variables",
                    ring.vars()[v]
                ))
            })?;
        let sqf = squarefree_part(relation, v);
        if &sqf != relation {
            extra.push(sqf);
        }
    }
    let extended = ideal.extend(&extra)?;
    if free.is_empty() {
        // Zero-dimensional: squarefree univariate relations make it radical.
        return extended.canonical();
    }

    let mut h = leading_coefficient_product(&basis, &dependent, &limits)?;
    if !extra.is_empty() {
        let gens = extended.groebner()?.basis().to_vec();
        h = h.mul_unchecked(&leading_coefficient_product(&gens, &dependent, &limits)?);
    }
    let h = reduced(&h);
    if h.is_constant() {
        return extended.canonical();
    }
    let generic = extended.saturation(&h)?;
    let special = split(&ideal.extend(&[h])?, depth + 1)?;
    generic.intersect(&special)?.canonical()
}

/// Product of the distinct non-constant leading coefficients, as
/// polynomials in the independent variables, of a Gröbner basis for the
/// order that compares the `dependent` block first.
fn leading_coefficient_product(
    gens: &[Polynomial],
    dependent: &[usize],
    limits: &Limits,
) -> Result<Polynomial> {
    let ring = gens[0].ring().clone();
    let n = ring.nvars();
    let free: Vec<usize> = (0..n).filter(|v| !dependent.contains(v)).collect();
    let perm: Vec<usize> = dependent.iter().chain(&free).copied().collect();
    let names: Vec<&str> = perm.iter().map(|&v| ring.vars()[v].as_str()).collect();
    let block = Ring::with_order(&names, MonomialOrder::Block(dependent.len()))?;
    let mut forward = vec![0; n];
    for (pos, &v) in perm.iter().enumerate() {
        forward[v] = pos;
    }
    let moved: Vec<Polynomial> = gens.iter().map(|g| g.map_vars(&block, &forward)).collect();
    let gb = buchberger(&block, &moved, limits)?;
    let k = dependent.len();
    let mut factors: Vec<Polynomial> = Vec::new();
    for g in gb.basis() {
        let lead = &g.leading_monomial().unwrap().exponents()[..k];
        let coeff = Polynomial::from_terms(
            &block,
            g.terms()
                .iter()
                .filter(|(m, _)| &m.exponents()[..k] == lead)
                .map(|(m, c)| {
                    let mut e = m.exponents().to_vec();
                    e[..k].iter_mut().for_each(|x| *x = 0);
                    (crate::poly::Monomial::from_exponents(e), c.clone())
                }),
        );
        let coeff = coeff.map_vars(&ring, &perm).primitive();
        if !coeff.is_constant() && !factors.contains(&coeff) {
            factors.push(coeff);
        }
    }
    Ok(factors
        .iter()
        .fold(Polynomial::one(&ring), |acc, f| acc.mul_unchecked(f)))
}

/// `a / b` when `b` divides `a` exactly.
pub(crate) fn div_exact(a: &Polynomial, b: &Polynomial) -> Option<Polynomial> {
    let ring = a.ring();
    let (bm, bc) = b.leading_term()?;
    let mut rest = a.clone();
    let mut quotient = Polynomial::zero(ring);
    while let Some((m, c)) = rest.leading_term().cloned() {
        if !bm.divides(&m) {
            return None;
        }
        let q = &c / bc;
        let qm = m.div(bm);
        quotient = quotient.add_scaled(&Polynomial::one(ring), &q, Some(&qm));
        rest = rest.add_scaled(b, &-q, Some(&qm));
    }
    Some(quotient)
}

type Univariate = Vec<Polynomial>;

fn degree(p: &Univariate) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

fn trim(mut p: Univariate) -> Univariate {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

/// Pseudo-division: `lc(b)^(deg a - deg b + 1) a = q b + r`.
fn pseudo_divide(a: &Univariate, b: &Univariate) -> (Univariate, Univariate) {
    let ring = b[0].ring().clone();
    let db = degree(b).expect("nonzero divisor");
    let lb = b[db].clone();
    let Some(da) = degree(a) else {
        return (Vec::new(), Vec::new());
    };
    if da < db {
        return (Vec::new(), a.clone());
    }
    let mut r = trim(a.clone());
    let mut q: Univariate = vec![Polynomial::zero(&ring); da - db + 1];
    let mut e = da - db + 1;
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let s = r[dr].clone();
        let k = dr - db;
        for c in q.iter_mut() {
            *c = c.mul_unchecked(&lb);
        }
        q[k] = q[k].try_add(&s).expect("same ring");
        for c in r.iter_mut() {
            *c = c.mul_unchecked(&lb);
        }
        for (i, bc) in b.iter().enumerate().take(db + 1) {
            r[i + k] = r[i + k].try_sub(&s.mul_unchecked(bc)).expect("same ring");
        }
        r = trim(r);
        e -= 1;
    }
    if e > 0 {
        let f = lb.pow(e as u32).expect("exponent within limits");
        for c in q.iter_mut().chain(r.iter_mut()) {
            *c = c.mul_unchecked(&f);
        }
    }
    (trim(q), trim(r))
}

/// A gcd over the fraction field of the coefficient ring, by the
/// subresultant remainder sequence. Determined up to a coefficient factor.
fn subresultant_gcd(a: &Univariate, b: &Univariate) -> Univariate {
    let ring = a[0].ring().clone();
    let one = Polynomial::one(&ring);
    let (mut a, mut b) = if degree(a) >= degree(b) {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    };
    if degree(&b).is_none() {
        return a;
    }
    let mut g = one.clone();
    let mut h = one.clone();
    loop {
        let delta = degree(&a).unwrap() - degree(&b).unwrap();
        let (_, r) = pseudo_divide(&a, &b);
        match degree(&r) {
            None => return b,
            Some(0) => return vec![one],
            Some(_) => {}
        }
        let divisor = g.mul_unchecked(&h.pow(delta as u32).expect("small exponent"));
        a = b;
        b = r
            .iter()
            .map(|c| div_exact(c, &divisor).expect("subresultant division is exact"))
            .collect();
        g = a[degree(&a).unwrap()].clone();
        h = match delta {
            0 => h,
            1 => g.clone(),
            d => div_exact(
                &g.pow(d as u32).expect("small exponent"),
                &h.pow(d as u32 - 1).expect("small exponent"),
            )
            .expect("subresultant division is exact"),
        };
    }
}

/// Gcd of `p` and `q` in `Q[vars]`, primitive with positive leading
/// coefficient; `gcd(0, 0) = 0`.
pub(crate) fn gcd(p: &Polynomial, q: &Polynomial) -> Polynomial {
    if p.is_zero() {
        return q.primitive();
    }
    if q.is_zero() || p.is_constant() || q.is_constant() {
        return if q.is_zero() {
            p.primitive()
        } else {
            Polynomial::one(p.ring())
        };
    }
    let var = p
        .variables()
        .into_iter()
        .chain(q.variables())
        .max()
        .expect("non-constant");
    match (p.uses_var(var), q.uses_var(var)) {
        (true, false) => return gcd(&content(p, var), q),
        (false, true) => return gcd(p, &content(q, var)),
        _ => {}
    }
    let (cp, cq) = (content(p, var), content(q, var));
    let pp = div_exact(p, &cp).expect("content divides");
    let qq = div_exact(q, &cq).expect("content divides");
    let g = subresultant_gcd(&pp.to_univariate(var), &qq.to_univariate(var));
    let g = Polynomial::from_univariate(p.ring(), var, &g);
    let g = div_exact(&g, &content(&g, var)).expect("content divides");
    gcd(&cp, &cq).mul_unchecked(&g).primitive()
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `var`.
fn content(p: &Polynomial, var: usize) -> Polynomial {
    p.to_univariate(var)
        .iter()
        .filter(|c| !c.is_zero())
        .fold(Polynomial::zero(p.ring()), |acc, c| gcd(&acc, c))
}

/// Squarefree part of `p` as a polynomial in `var` over the field of
/// fractions of the other variables, with the content in `var` removed.
pub(crate) fn squarefree_part(p: &Polynomial, var: usize) -> Polynomial {
    if !p.uses_var(var) {
        return Polynomial::one(p.ring());
    }
    let pp = div_exact(p, &content(p, var)).expect("content divides");
    let g = gcd(&pp, &pp.partial(var));
    let q = div_exact(&pp, &g).expect("gcd divides");
    div_exact(&q, &content(&q, var))
        .expect("content divides")
        .primitive()
}

/// `p / gcd(p, ∂p/∂x_1, ..., ∂p/∂x_n)`: the product of the distinct
/// irreducible factors of `p`, up to a constant.
pub(crate) fn reduced(p: &Polynomial) -> Polynomial {
    if p.is_constant() {
        return p.primitive();
    }
    let g = p
        .variables()
        .into_iter()
        .fold(p.clone(), |acc, v| gcd(&acc, &p.partial(v)));
    div_exact(p, &g).expect("gcd divides").primitive()
}
