//! Homogeneous polynomial laws on free modules, stored as linear maps out of
//! the divided-power module: a degree-d law on R^n is a table indexed by the
//! basis e^[ν] of Γ^d(R^n), |ν| = d, and evaluates as
//! `z ↦ Σ_ν table[ν] · z^ν`.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::coeffs::{Ring, Scalar};
use crate::error::{Error, Result};
use crate::freealg::{Alphabet, MixedMonomial, NcPoly, PolyContext, XMode, XPart};

/// Multidegree ν indexing the basis vector e^[ν] of a divided power.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DividedIndex(pub Vec<u32>);

impl DividedIndex {
    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }
}

/// All multidegrees of length `n` and weight `d`, lexicographically
/// descending. This order is part of the file format.
pub fn gamma_basis(n: usize, d: u32) -> Vec<DividedIndex> {
    fn rec(prefix: &mut Vec<u32>, n: usize, left: u32, out: &mut Vec<DividedIndex>) {
        if prefix.len() + 1 == n {
            prefix.push(left);
            out.push(DividedIndex(prefix.clone()));
            prefix.pop();
            return;
        }
        for k in (0..=left).rev() {
            prefix.push(k);
            rec(prefix, n, left - k, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(DividedIndex(Vec::new()));
        }
        return out;
    }
    rec(&mut Vec::with_capacity(n), n, d, &mut out);
    out
}

/// `z^ν` for a coefficient vector `z`.
pub fn monomial_value(z: &[Scalar], nu: &DividedIndex) -> Scalar {
    let ring = z[0].ring();
    nu.0.iter()
        .zip(z)
        .fold(ring.one(), |acc, (&k, c)| acc.mul(&c.pow(k)))
}

/// Coordinates of z^[d] on `gamma_basis(n, d)`.
pub fn divided_power(z: &[Scalar], d: u32) -> Result<Vec<Scalar>> {
    let Some(first) = z.first() else {
        return Err(Error::Precondition("empty coefficient vector".into()));
    };
    if let Some(bad) = z.iter().find(|c| c.ring() != first.ring()) {
        return Err(Error::RingMismatch {
            left: first.ring(),
            right: bad.ring(),
        });
    }
    Ok(gamma_basis(z.len(), d)
        .iter()
        .map(|nu| monomial_value(z, nu))
        .collect())
}

/// Where a law takes its values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LawTarget {
    Scalar,
    /// The free algebra on the given generators.
    Algebra(Alphabet),
}

impl LawTarget {
    fn alphabet(&self) -> Alphabet {
        match self {
            LawTarget::Scalar => Alphabet::empty(),
            LawTarget::Algebra(a) => a.clone(),
        }
    }
}

/// A homogeneous polynomial law of degree `degree` on R^rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomLaw {
    degree: u32,
    rank: usize,
    ring: Ring,
    target: LawTarget,
    value_ctx: Arc<PolyContext>,
    table: BTreeMap<DividedIndex, NcPoly>,
}

impl HomLaw {
    pub fn zero(ring: Ring, rank: usize, degree: u32, target: LawTarget) -> HomLaw {
        let value_ctx = PolyContext::free(ring, target.alphabet());
        HomLaw {
            degree,
            rank,
            ring,
            target,
            value_ctx,
            table: BTreeMap::new(),
        }
    }

    /// Builds a law from explicit table entries (absent entries are zero).
    pub fn from_table(
        ring: Ring,
        rank: usize,
        degree: u32,
        target: LawTarget,
        entries: impl IntoIterator<Item = (DividedIndex, NcPoly)>,
    ) -> Result<HomLaw> {
        let mut law = HomLaw::zero(ring, rank, degree, target);
        for (nu, v) in entries {
            if nu.0.len() != rank || nu.weight() != degree {
                return Err(Error::Precondition(format!(
                    "index {:?} is not of length {rank} and weight {degree}",
                    nu.0
                )));
            }
            let v = v.embed(&law.value_ctx)?;
            if !v.is_x_free() {
                return Err(Error::ContextMismatch("law values must be x-free".into()));
            }
            law.insert(nu, v);
        }
        Ok(law)
    }

    fn insert(&mut self, nu: DividedIndex, v: NcPoly) {
        let slot = self
            .table
            .entry(nu)
            .or_insert_with(|| NcPoly::zero(&self.value_ctx));
        *slot = slot.add(&v).expect("value context");
        self.table.retain(|_, v| !v.is_zero());
    }

    /// The constant law `z ↦ c` of degree 0.
    pub fn constant(rank: usize, c: Scalar) -> HomLaw {
        let ring = c.ring();
        let mut law = HomLaw::zero(ring, rank, 0, LawTarget::Scalar);
        let v = NcPoly::constant(&law.value_ctx, c);
        law.insert(DividedIndex(vec![0; rank]), v);
        law
    }

    /// `z ↦ Σ z_i a_i`: the generic point of the free algebra on `gens`.
    pub fn identity(ring: Ring, gens: &Alphabet) -> HomLaw {
        HomLaw::divided_power_map(ring, gens.len(), 1, gens)
            .expect("rank-one divided powers match the alphabet")
    }

    /// `z ↦ z^[m]` read in the algebra whose generators name the basis of
    /// Γ^m(R^rank): e^[ν] ↦ the generator at ν's position in
    /// `gamma_basis(rank, m)`.
    pub fn divided_power_map(ring: Ring, rank: usize, m: u32, gens: &Alphabet) -> Result<HomLaw> {
        let basis = gamma_basis(rank, m);
        if basis.len() != gens.len() {
            return Err(Error::Precondition(format!(
                "Γ^{m} of rank {rank} has {} basis vectors but {} generators were given",
                basis.len(),
                gens.len()
            )));
        }
        let mut law = HomLaw::zero(ring, rank, m, LawTarget::Algebra(gens.clone()));
        for (i, nu) in basis.into_iter().enumerate() {
            let v = NcPoly::generator(&law.value_ctx, i);
            law.insert(nu, v);
        }
        Ok(law)
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn target(&self) -> &LawTarget {
        &self.target
    }

    pub fn value_context(&self) -> &Arc<PolyContext> {
        &self.value_ctx
    }

    pub fn is_zero(&self) -> bool {
        self.table.is_empty()
    }

    /// Nonzero table entries.
    pub fn table(&self) -> &BTreeMap<DividedIndex, NcPoly> {
        &self.table
    }

    pub fn entry(&self, nu: &DividedIndex) -> NcPoly {
        self.table
            .get(nu)
            .cloned()
            .unwrap_or_else(|| NcPoly::zero(&self.value_ctx))
    }

    /// Scalar value of an entry; only meaningful for scalar targets.
    pub fn scalar_entry(&self, nu: &DividedIndex) -> Scalar {
        let v = self.entry(nu);
        v.coefficient(&self.value_ctx.unit_monomial())
    }

    fn check_compatible(&self, other: &HomLaw) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch {
                left: self.ring,
                right: other.ring,
            });
        }
        if self.rank != other.rank {
            return Err(Error::ContextMismatch(format!(
                "law ranks {} and {}",
                self.rank, other.rank
            )));
        }
        Ok(())
    }

    /// Sum of two laws of equal degree and target.
    pub fn add(&self, other: &HomLaw) -> Result<HomLaw> {
        self.check_compatible(other)?;
        if self.degree != other.degree || self.target != other.target {
            return Err(Error::ContextMismatch(format!(
                "cannot add laws of degree {} and {} (or different targets)",
                self.degree, other.degree
            )));
        }
        let mut out = self.clone();
        for (nu, v) in &other.table {
            out.insert(nu.clone(), v.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> HomLaw {
        let mut out = self.clone();
        for v in out.table.values_mut() {
            *v = v.neg();
        }
        out
    }

    pub fn sub(&self, other: &HomLaw) -> Result<HomLaw> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Scalar) -> HomLaw {
        let mut out = self.clone();
        for v in out.table.values_mut() {
            *v = v.scale(c);
        }
        out.table.retain(|_, v| !v.is_zero());
        out
    }

    /// Re-targets a scalar law into the free algebra on `gens`.
    pub fn into_algebra(&self, gens: &Alphabet) -> Result<HomLaw> {
        match &self.target {
            LawTarget::Algebra(a) if a == gens => Ok(self.clone()),
            LawTarget::Algebra(_) => Err(Error::ContextMismatch(
                "law already targets a different algebra".into(),
            )),
            LawTarget::Scalar => HomLaw::from_table(
                self.ring,
                self.rank,
                self.degree,
                LawTarget::Algebra(gens.clone()),
                self.table.clone(),
            ),
        }
    }

    /// Coefficient reduction ZZ -> GF(p), table-wise.
    pub fn reduce_to(&self, ring: Ring) -> Result<HomLaw> {
        let mut out = HomLaw::zero(ring, self.rank, self.degree, self.target.clone());
        for (nu, v) in &self.table {
            let v = v.reduce_to(ring)?;
            out.insert(nu.clone(), v);
        }
        Ok(out)
    }
}

/// Reads a homogeneous commutative polynomial as a scalar law: the table
/// entry at ν is the coefficient of x^ν.
pub fn law_from_commutative_poly(f: &NcPoly, degree: u32) -> Result<HomLaw> {
    let ctx = f.context();
    let n = ctx.vars.len();
    let mut law = HomLaw::zero(ctx.ring, n, degree, LawTarget::Scalar);
    for (m, c) in f.terms() {
        if !m.aword.is_empty() {
            return Err(Error::Precondition(
                "form must not involve noncommuting generators".into(),
            ));
        }
        let nu = DividedIndex(m.xpart.multidegree(n));
        if nu.weight() != degree {
            return Err(Error::NotHomogeneous(format!(
                "term of degree {} in a form of degree {degree}",
                nu.weight()
            )));
        }
        let v = NcPoly::constant(&law.value_ctx, c.clone());
        law.insert(nu, v);
    }
    Ok(law)
}

/// Evaluates the law at `z`: Σ_ν table[ν] · z^ν.
pub fn law_eval(law: &HomLaw, z: &[Scalar]) -> Result<NcPoly> {
    if z.len() != law.rank {
        return Err(Error::ContextMismatch(format!(
            "point of length {} for a law of rank {}",
            z.len(),
            law.rank
        )));
    }
    if let Some(bad) = z.iter().find(|c| c.ring() != law.ring) {
        return Err(Error::RingMismatch {
            left: law.ring,
            right: bad.ring(),
        });
    }
    let mut out = NcPoly::zero(&law.value_ctx);
    for (nu, v) in &law.table {
        let coeff = if law.rank == 0 {
            law.ring.one()
        } else {
            monomial_value(z, nu)
        };
        out = out.add(&v.scale(&coeff))?;
    }
    Ok(out)
}

/// Fresh variable names that avoid the generator names.
fn generic_vars(rank: usize, avoid: &Alphabet) -> Alphabet {
    let mut prefix = String::from("t");
    loop {
        let names: Vec<String> = (1..=rank).map(|i| format!("{prefix}{i}")).collect();
        if names.iter().all(|n| avoid.index_of(n).is_none()) {
            return Alphabet::new(&names).expect("valid generated names");
        }
        prefix.push('_');
    }
}

/// The law applied to the generic point Σ e_i x_i: the polynomial
/// Σ_ν table[ν] x^ν with commuting `vars`.
pub fn law_generic(law: &HomLaw, vars: &Alphabet) -> Result<NcPoly> {
    if vars.len() != law.rank {
        return Err(Error::ContextMismatch(format!(
            "{} variables for a law of rank {}",
            vars.len(),
            law.rank
        )));
    }
    let ctx = PolyContext::new(
        law.ring,
        XMode::Commuting,
        law.target.alphabet(),
        vars.clone(),
    )?;
    let mut out = NcPoly::zero(&ctx);
    for (nu, v) in &law.table {
        for (m, c) in v.terms() {
            out.add_term(
                MixedMonomial {
                    aword: m.aword.clone(),
                    xpart: XPart::Exponents(nu.0.clone()),
                },
                c.clone(),
            );
        }
    }
    Ok(out)
}

/// Pointwise product `z ↦ psi(z) · phi(z)` (algebra values multiply in the
/// written order). Computed by multiplying generic expansions and reading
/// off the coefficient of each x^ν.
pub fn law_product(psi: &HomLaw, phi: &HomLaw) -> Result<HomLaw> {
    psi.check_compatible(phi)?;
    let target = match (&psi.target, &phi.target) {
        (LawTarget::Scalar, t) | (t, LawTarget::Scalar) => t.clone(),
        (LawTarget::Algebra(a), LawTarget::Algebra(b)) => {
            if a != b {
                return Err(Error::ContextMismatch(
                    "laws target different algebras".into(),
                ));
            }
            psi.target.clone()
        }
    };
    let gens = target.alphabet();
    let vars = generic_vars(psi.rank, &gens);
    let ctx = PolyContext::new(psi.ring, XMode::Commuting, gens, vars.clone())?;
    let g1 = law_generic(psi, &vars)?.embed(&ctx)?;
    let g2 = law_generic(phi, &vars)?.embed(&ctx)?;
    let prod = g1.mul(&g2)?;
    let degree = psi.degree + phi.degree;
    let entries = prod
        .extract_coefficients()
        .into_iter()
        .map(|(x, v)| (DividedIndex(x.multidegree(psi.rank)), v));
    HomLaw::from_table(psi.ring, psi.rank, degree, target, entries)
}

/// `psi^k`, with `psi^0` the constant law 1 (in the same target).
pub fn law_power(psi: &HomLaw, k: u32) -> Result<HomLaw> {
    let mut acc = HomLaw::constant(psi.rank, psi.ring.one());
    if let LawTarget::Algebra(a) = &psi.target {
        acc = acc.into_algebra(a)?;
    }
    for _ in 0..k {
        acc = law_product(&acc, psi)?;
    }
    Ok(acc)
}

/// A polynomial law as a finite sum of homogeneous components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyLaw {
    ring: Ring,
    rank: usize,
    target: LawTarget,
    components: BTreeMap<u32, HomLaw>,
}

impl PolyLaw {
    pub fn zero(ring: Ring, rank: usize, target: LawTarget) -> PolyLaw {
        PolyLaw {
            ring,
            rank,
            target,
            components: BTreeMap::new(),
        }
    }

    pub fn from_hom(law: HomLaw) -> PolyLaw {
        let mut out = PolyLaw::zero(law.ring, law.rank, law.target.clone());
        if !law.is_zero() {
            out.components.insert(law.degree, law);
        }
        out
    }

    pub fn degrees(&self) -> impl Iterator<Item = u32> + '_ {
        self.components.keys().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    /// Evaluation as the sum of the component evaluations.
    pub fn eval(&self, z: &[Scalar]) -> Result<NcPoly> {
        let ctx = PolyContext::free(self.ring, self.target.alphabet());
        let mut out = NcPoly::zero(&ctx);
        for law in self.components.values() {
            out = out.add(&law_eval(law, z)?)?;
        }
        Ok(out)
    }
}

/// Degreewise sum; components that cancel are dropped.
pub fn law_sum(a: &PolyLaw, b: &PolyLaw) -> Result<PolyLaw> {
    if a.ring != b.ring || a.rank != b.rank || a.target != b.target {
        return Err(Error::ContextMismatch(
            "polynomial laws over different data".into(),
        ));
    }
    let mut out = a.clone();
    for (deg, law) in &b.components {
        let sum = match out.components.get(deg) {
            Some(existing) => existing.add(law)?,
            None => law.clone(),
        };
        if sum.is_zero() {
            out.components.remove(deg);
        } else {
            out.components.insert(*deg, sum);
        }
    }
    Ok(out)
}

/// The homogeneous component of degree `i` (the zero law when absent).
pub fn law_component(a: &PolyLaw, i: u32) -> HomLaw {
    a.components
        .get(&i)
        .cloned()
        .unwrap_or_else(|| HomLaw::zero(a.ring, a.rank, i, a.target.clone()))
}
