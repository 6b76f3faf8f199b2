//! Pfaffian systems `dy_i/dx_j = f_ij(x, y)`, `g_k(x, y) = 0`, their total
//! derivatives, the Frobenius compatibility polynomials, prolongation, and
//! the chain of radical ideals that decides integrability.

use log::debug;

use crate::error::{Error, Result};
use crate::groebner::Limits;
use crate::ideal::Ideal;
use crate::poly::{Polynomial, Ring};

#[derive(Debug, Clone)]
pub struct PfaffianSystem {
    ring: Ring,
    x_vars: Vec<String>,
    y_vars: Vec<String>,
    /// `f[i][j]` is the right-hand side of `dy_i/dx_j`.
    f: Vec<Vec<Polynomial>>,
    g: Vec<Polynomial>,
    autonomous: bool,
    y_index: Vec<usize>,
    x_index: Vec<Option<usize>>,
}

impl PfaffianSystem {
    /// Builds a system whose polynomials live in `ring`. The ring must
    /// contain every unknown and nothing beyond the unknowns and the
    /// independent variables.
    pub fn new(
        ring: &Ring,
        x_vars: Vec<String>,
        y_vars: Vec<String>,
        f: Vec<Vec<Polynomial>>,
        g: Vec<Polynomial>,
    ) -> Result<PfaffianSystem> {
        let (n, m) = (y_vars.len(), x_vars.len());
        if n == 0 || m == 0 {
            return Err(Error::InvalidSystem(
                "at least one independent variable and one unknown are required".into(),
            ));
        }
        let all: Vec<&String> = x_vars.iter().chain(&y_vars).collect();
        for (k, v) in all.iter().enumerate() {
            if all[..k].contains(v) {
                return Err(Error::InvalidSystem(format!(
                    "variable `{v}` declared twice"
                )));
            }
        }
        if let Some(v) = ring.vars().iter().find(|v| !all.contains(v)) {
            return Err(Error::InvalidSystem(format!(
                "ring variable `{v}` is not declared"
            )));
        }
        let y_index = y_vars
            .iter()
            .map(|y| ring.index_of(y))
            .collect::<Result<Vec<_>>>()?;
        let x_index = x_vars.iter().map(|x| ring.var_index(x)).collect();
        if f.len() != n || f.iter().any(|row| row.len() != m) {
            return Err(Error::InvalidSystem(format!("f must be a {n}x{m} matrix")));
        }
        if f.iter().flatten().chain(&g).any(|p| p.ring() != ring) {
            return Err(Error::RingMismatch);
        }
        let mut sys = PfaffianSystem {
            ring: ring.clone(),
            x_vars,
            y_vars,
            f,
            g,
            autonomous: true,
            y_index,
            x_index,
        };
        sys.autonomous = !sys
            .f
            .iter()
            .flatten()
            .chain(&sys.g)
            .any(|p| sys.x_index.iter().flatten().any(|&x| p.uses_var(x)));
        Ok(sys)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn x_vars(&self) -> &[String] {
        &self.x_vars
    }

    pub fn y_vars(&self) -> &[String] {
        &self.y_vars
    }

    pub fn f(&self) -> &[Vec<Polynomial>] {
        &self.f
    }

    pub fn g(&self) -> &[Polynomial] {
        &self.g
    }

    /// The same derivative equations with the constraints replaced by `g`.
    pub fn with_constraints(&self, g: Vec<Polynomial>) -> Result<PfaffianSystem> {
        PfaffianSystem::new(
            &self.ring,
            self.x_vars.clone(),
            self.y_vars.clone(),
            self.f.clone(),
            g,
        )
    }

    /// Number of unknowns.
    pub fn n(&self) -> usize {
        self.y_vars.len()
    }

    /// Number of independent variables.
    pub fn m(&self) -> usize {
        self.x_vars.len()
    }

    pub fn is_autonomous(&self) -> bool {
        self.autonomous
    }

    /// `D_j(h) = ∂h/∂x_j + Σ_i ∂h/∂y_i f_ij` (zero-based `j`).
    pub fn total_derivative(&self, h: &Polynomial, j: usize) -> Result<Polynomial> {
        if j >= self.m() {
            return Err(Error::IndexOutOfRange {
                index: j,
                len: self.m(),
            });
        }
        if h.ring() != &self.ring {
            return Err(Error::RingMismatch);
        }
        let mut out = match self.x_index[j] {
            Some(x) => h.partial(x),
            None => Polynomial::zero(&self.ring),
        };
        for (i, &y) in self.y_index.iter().enumerate() {
            let d = h.partial(y);
            if !d.is_zero() {
                out = out.try_add(&d.mul_unchecked(&self.f[i][j]))?;
            }
        }
        Ok(out)
    }

    /// `D_j(f_ik) - D_k(f_ij)` for `j < k`, grouped by `(j, k)` and then `i`.
    pub fn frobenius_generators(&self) -> Vec<Polynomial> {
        let mut out = Vec::new();
        for j in 0..self.m() {
            for k in j + 1..self.m() {
                for i in 0..self.n() {
                    let a = self.total_derivative(&self.f[i][k], j).expect("in range");
                    let b = self.total_derivative(&self.f[i][j], k).expect("in range");
                    out.push(a.try_sub(&b).expect("same ring"));
                }
            }
        }
        out
    }

    /// Classical Frobenius test: every compatibility polynomial vanishes.
    /// Only meaningful without algebraic constraints.
    pub fn complete_integrability(&self) -> Result<bool> {
        if !self.g.is_empty() {
            return Err(Error::ConstraintsPresent);
        }
        Ok(self.frobenius_generators().iter().all(Polynomial::is_zero))
    }

    /// `gens` followed by `D_j(g)` for each generator and each `j`.
    pub fn prolong(&self, gens: &[Polynomial]) -> Result<Vec<Polynomial>> {
        if !self.autonomous {
            return Err(Error::NonAutonomous);
        }
        let mut out = gens.to_vec();
        for g in gens {
            for j in 0..self.m() {
                out.push(self.total_derivative(g, j)?);
            }
        }
        Ok(out)
    }

    /// Equivalent autonomous system: each `x_l` becomes a new unknown `w_l`
    /// with `dw_l/dx_j = δ_lj`. Autonomous systems are returned unchanged.
    pub fn autonomize(&self) -> PfaffianSystem {
        if self.autonomous {
            return self.clone();
        }
        let (n, m) = (self.n(), self.m());
        let mut taken: Vec<String> = self.x_vars.iter().chain(&self.y_vars).cloned().collect();
        let mut w_vars = Vec::with_capacity(m);
        for l in 1..=m {
            let mut name = format!("w{l}");
            while taken.contains(&name) {
                name.push('_');
            }
            taken.push(name.clone());
            w_vars.push(name);
        }
        let unknowns: Vec<String> = self.y_vars.iter().chain(&w_vars).cloned().collect();
        let ring = Ring::new(&unknowns)
            .expect("fresh identifiers")
            .with_max_exponent(self.ring.max_exponent());
        let mut map = vec![usize::MAX; self.ring.nvars()];
        for (i, &y) in self.y_index.iter().enumerate() {
            map[y] = i;
        }
        for (l, x) in self.x_index.iter().enumerate() {
            if let Some(x) = x {
                map[*x] = n + l;
            }
        }
        let mut f: Vec<Vec<Polynomial>> = self
            .f
            .iter()
            .map(|row| row.iter().map(|p| p.map_vars(&ring, &map)).collect())
            .collect();
        for l in 0..m {
            f.push(
                (0..m)
                    .map(|j| Polynomial::from_int(&ring, i64::from(l == j)))
                    .collect(),
            );
        }
        let g = self.g.iter().map(|p| p.map_vars(&ring, &map)).collect();
        PfaffianSystem::new(&ring, self.x_vars.clone(), unknowns, f, g)
            .expect("autonomized system is well formed")
    }

    /// The same autonomous system over `Q[y]` alone.
    pub fn restrict_to_unknowns(&self) -> Result<PfaffianSystem> {
        if !self.autonomous {
            return Err(Error::NonAutonomous);
        }
        if self.ring.vars() == self.y_vars.as_slice() {
            return Ok(self.clone());
        }
        let ring = Ring::new(&self.y_vars)?.with_max_exponent(self.ring.max_exponent());
        let f = self
            .f
            .iter()
            .map(|row| row.iter().map(|p| p.embed(&ring)).collect())
            .collect::<Result<Vec<Vec<_>>>>()?;
        let g = self
            .g
            .iter()
            .map(|p| p.embed(&ring))
            .collect::<Result<Vec<_>>>()?;
        PfaffianSystem::new(&ring, self.x_vars.clone(), self.y_vars.clone(), f, g)
    }
}

/// One ideal of the chain, given by its reduced grevlex basis.
#[derive(Debug, Clone)]
pub struct ChainStep {
    pub p: usize,
    pub generators: Vec<Polynomial>,
    pub dim: i64,
    pub trivial: bool,
}

#[derive(Debug, Clone)]
pub struct ChainReport {
    /// The chain up to and including index `p_infinity`.
    pub steps: Vec<ChainStep>,
    pub p_infinity: usize,
    pub integrable: bool,
    /// Dimension of the last variety; `-1` when it is empty.
    pub rho: i64,
    pub autonomized: bool,
    pub n_original: usize,
    pub n_aut: usize,
    /// Ring of the unknowns the chain lives in.
    pub ring: Ring,
}

impl ChainReport {
    pub fn ideal(&self, p: usize) -> Option<Ideal> {
        self.steps
            .get(p)
            .map(|s| Ideal::new(&self.ring, s.generators.clone()).expect("chain ring"))
    }
}

fn at_step(step: usize) -> impl Fn(Error) -> Error {
    move |e| Error::ChainStep {
        step,
        source: Box::new(e),
    }
}

fn record(p: usize, ideal: &Ideal) -> Result<ChainStep> {
    let dim = ideal.dimension()?;
    Ok(ChainStep {
        p,
        generators: ideal.generators().to_vec(),
        dim,
        trivial: dim < 0,
    })
}

/// Builds `I_0 = √(g)`, `I_1 = √(F + prolong(I_0))`,
/// `I_{p+1} = √(prolong(I_p))` until the chain stabilizes or reaches the
/// unit ideal. Non-autonomous systems are autonomized first.
pub fn build_chain(system: &PfaffianSystem, limits: &Limits) -> Result<ChainReport> {
    let autonomized = !system.is_autonomous();
    let sys = system.autonomize().restrict_to_unknowns()?;
    let ring = sys.ring().clone();
    let n = sys.n();

    let radical_of = |gens: Vec<Polynomial>, step: usize| -> Result<Ideal> {
        Ideal::new(&ring, gens)
            .and_then(|i| i.with_limits(limits.clone()).radical())
            .map_err(at_step(step))
    };

    let mut current = radical_of(sys.g().to_vec(), 0)?;
    let mut steps = vec![record(0, &current).map_err(at_step(0))?];
    debug!("I_0 = {:?}, dim {}", current.generators(), steps[0].dim);
    let mut p = 0;
    while !steps[p].trivial {
        let mut gens = sys.prolong(current.generators())?;
        if p == 0 {
            gens.extend(sys.frobenius_generators());
        }
        let next = radical_of(gens, p + 1)?;
        if next.ideal_equal(&current).map_err(at_step(p + 1))? {
            debug!("I_{} = I_{}", p + 1, p);
            break;
        }
        p += 1;
        if p > n + 1 {
            return Err(Error::Internal(format!(
                "chain did not stabilize by step {} with {n} unknowns",
                n + 1
            )));
        }
        steps.push(record(p, &next).map_err(at_step(p))?);
        debug!("I_{p} = {:?}, dim {}", next.generators(), steps[p].dim);
        current = next;
    }
    let last = &steps[p];
    Ok(ChainReport {
        integrable: !last.trivial,
        rho: last.dim,
        p_infinity: p,
        steps,
        autonomized,
        n_original: system.n(),
        n_aut: n,
        ring,
    })
}

/// The integrability verdict and integral dimension, with the chain that
/// certifies them.
pub fn decide(system: &PfaffianSystem, limits: &Limits) -> Result<(bool, i64, ChainReport)> {
    let report = build_chain(system, limits)?;
    Ok((report.integrable, report.rho, report))
}
