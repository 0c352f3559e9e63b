//! Presentations of generalized Clifford algebras of a tuple of forms
//! `f_m, f_2m, …, f_dm` in n variables: the coefficient-extraction (KL)
//! form, the divided-power (ψ) form, the quadratic and Weyl
//! specializations, the comparison between the first two, and the weighted
//! hypersurface equation.

mod input;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::coeffs::{Ring, Scalar};
use crate::error::{Error, Result};
use crate::freealg::{Alphabet, NcPoly, PolyContext, XMode};
use crate::gbasis::{buchberger_bounded, MembershipVerdict};
use crate::laws::{
    gamma_basis, law_from_commutative_poly, law_power, law_product, monomial_value, HomLaw,
};

pub use input::{parse_presentation, InputFile};

/// Forms `f_{l·m}` (l = 1..=d) over `vars`, plus the x-mode used by the
/// coefficient-extraction construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliffordInput {
    ring: Ring,
    vars: Alphabet,
    m: u32,
    d: u32,
    /// `forms[l - 1]` is `f_{l·m}`, possibly zero, in the commutative
    /// context over `vars`.
    forms: Vec<NcPoly>,
    mode: XMode,
}

impl CliffordInput {
    /// `forms` maps l to `f_{l·m}`; absent entries are zero.
    pub fn new(
        ring: Ring,
        vars: Alphabet,
        m: u32,
        d: u32,
        forms: BTreeMap<u32, NcPoly>,
        mode: XMode,
    ) -> Result<CliffordInput> {
        if vars.is_empty() || m == 0 || d == 0 {
            return Err(Error::InvalidInput(
                "need at least one variable and m, d >= 1".into(),
            ));
        }
        let ctx = PolyContext::commutative(ring, vars.clone());
        let mut slots = vec![NcPoly::zero(&ctx); d as usize];
        for (l, f) in forms {
            if l == 0 || l > d {
                return Err(Error::InvalidInput(format!(
                    "form index {l} outside 1..={d}"
                )));
            }
            let f = f.embed(&ctx)?;
            let want = (l * m) as usize;
            if let Some((mono, _)) = f.terms().find(|(mono, _)| mono.degree() != want) {
                return Err(Error::NotHomogeneous(format!(
                    "f[{l}] must be homogeneous of degree {want}, found a term of degree {}",
                    mono.degree()
                )));
            }
            slots[(l - 1) as usize] = f;
        }
        Ok(CliffordInput {
            ring,
            vars,
            m,
            d,
            forms: slots,
            mode,
        })
    }

    /// Parses each form over `vars`.
    pub fn from_texts(
        ring: Ring,
        vars: Alphabet,
        m: u32,
        d: u32,
        forms: &[(u32, &str)],
        mode: XMode,
    ) -> Result<CliffordInput> {
        let ctx = PolyContext::commutative(ring, vars.clone());
        let parsed = forms
            .iter()
            .map(|&(l, t)| Ok((l, crate::freealg::parse_poly(t, &ctx)?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        CliffordInput::new(ring, vars, m, d, parsed, mode)
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn vars(&self) -> &Alphabet {
        &self.vars
    }

    pub fn n(&self) -> usize {
        self.vars.len()
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn mode(&self) -> XMode {
        self.mode
    }

    pub fn with_mode(&self, mode: XMode) -> CliffordInput {
        CliffordInput {
            mode,
            ..self.clone()
        }
    }

    /// `f_{l·m}` for 1 ≤ l ≤ d.
    pub fn form(&self, l: u32) -> &NcPoly {
        &self.forms[(l - 1) as usize]
    }

    /// Names for the generators indexed by `gamma_basis(n, m)`.
    pub fn generators(&self) -> Result<Alphabet> {
        generator_names(self.n(), self.m, &self.vars)
    }
}

/// Single letters `a, b, c, …` when generators correspond to variables
/// (m = 1) and there are few enough; otherwise `a_<j1>_<j2>…` after the
/// multidegree. Position i names the i-th entry of `gamma_basis(n, m)`.
pub fn generator_names(n: usize, m: u32, avoid: &Alphabet) -> Result<Alphabet> {
    let basis = gamma_basis(n, m);
    if m == 1 && n <= 26 {
        let letters: Vec<String> = (0..n)
            .map(|i| ((b'a' + i as u8) as char).to_string())
            .collect();
        if letters.iter().all(|l| avoid.index_of(l).is_none()) {
            return Alphabet::new(&letters);
        }
    }
    let names: Vec<String> = basis
        .iter()
        .map(|nu| {
            let parts: Vec<String> = nu.0.iter().map(u32::to_string).collect();
            format!("a_{}", parts.join("_"))
        })
        .collect();
    if let Some(clash) = names.iter().find(|s| avoid.index_of(s).is_some()) {
        return Err(Error::InvalidName(format!(
            "generator name {clash} collides with a variable"
        )));
    }
    Alphabet::new(&names)
}

/// Which construction produced a presentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Construction {
    Kl,
    Psi,
    Quadratic,
    Weyl,
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Construction::Kl => "kl",
            Construction::Psi => "psi",
            Construction::Quadratic => "quadratic",
            Construction::Weyl => "weyl",
        })
    }
}

impl std::str::FromStr for Construction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Construction> {
        match s {
            "kl" => Ok(Construction::Kl),
            "psi" => Ok(Construction::Psi),
            "quadratic" => Ok(Construction::Quadratic),
            "weyl" => Ok(Construction::Weyl),
            other => Err(Error::InvalidInput(format!(
                "unknown construction `{other}`"
            ))),
        }
    }
}

/// Generators and relations of a quotient of the free algebra. Relations
/// are normalized (monic over fields, positive leading coefficient over
/// ZZ), nonzero, distinct, and sorted by their text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    ring: Ring,
    generators: Alphabet,
    relations: Vec<NcPoly>,
    construction: Option<Construction>,
}

impl Presentation {
    pub fn new(
        ring: Ring,
        generators: Alphabet,
        relations: impl IntoIterator<Item = NcPoly>,
        construction: Option<Construction>,
    ) -> Result<Presentation> {
        let ctx = PolyContext::free(ring, generators.clone());
        let mut keyed: BTreeMap<String, NcPoly> = BTreeMap::new();
        for r in relations {
            if !r.is_x_free() {
                return Err(Error::ContextMismatch(
                    "relations must not involve x-variables".into(),
                ));
            }
            let r = r.embed(&ctx)?.normalized();
            if !r.is_zero() {
                keyed.insert(r.to_string(), r);
            }
        }
        Ok(Presentation {
            ring,
            generators,
            relations: keyed.into_values().collect(),
            construction,
        })
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn generators(&self) -> &Alphabet {
        &self.generators
    }

    pub fn relations(&self) -> &[NcPoly] {
        &self.relations
    }

    pub fn construction(&self) -> Option<Construction> {
        self.construction
    }

    /// The free algebra the relations live in.
    pub fn context(&self) -> Arc<PolyContext> {
        PolyContext::free(self.ring, self.generators.clone())
    }

    /// `ring = …`, `generators = …`, then one `rel: …` line per relation.
    pub fn to_text(&self) -> String {
        let mut out = format!("ring = {}\ngenerators = {}\n", self.ring, self.generators);
        for r in &self.relations {
            out.push_str(&format!("rel: {r}\n"));
        }
        out
    }
}

fn mixed_context(input: &CliffordInput, gens: &Alphabet, mode: XMode) -> Result<Arc<PolyContext>> {
    PolyContext::new(input.ring, mode, gens.clone(), input.vars.clone())
}

/// Coefficients of the x-monomials in
/// `L^d − Σ_{l=1}^{d} L^{d−l} · f_{l·m}` with `L = Σ_J a_J x^J`, computed
/// in the input's x-mode. In ordered mode `x^J` and the monomials of each
/// form are sorted words, placed to the right of the powers of `L`.
pub fn kl_presentation(input: &CliffordInput) -> Result<Presentation> {
    let gens = input.generators()?;
    let ctx = mixed_context(input, &gens, input.mode)?;
    let mut generic = NcPoly::zero(&ctx);
    for (i, nu) in gamma_basis(input.n(), input.m).iter().enumerate() {
        let term = NcPoly::generator(&ctx, i).mul(&NcPoly::x_monomial(&ctx, &nu.0))?;
        generic = generic.add(&term)?;
    }
    let mut expr = generic.pow(input.d);
    for l in 1..=input.d {
        let f = input.form(l).embed(&ctx)?;
        expr = expr.sub(&generic.pow(input.d - l).mul(&f)?)?;
    }
    Presentation::new(
        input.ring,
        gens,
        expr.extract_coefficients().into_values(),
        Some(Construction::Kl),
    )
}

/// The relation law δ of degree m·d with values in the free algebra:
/// `ψ_d − Σ_{i=0}^{d−1} ψ_{−1}^{d−i} ψ_i` where ψ_{−1} sends e^[ν] to its
/// generator, ψ_0 = 1, ψ_i is the law of `−f_{i·m}` for 0 < i < d and ψ_d
/// the law of `f_{d·m}`.
pub fn relation_law(input: &CliffordInput) -> Result<HomLaw> {
    let gens = input.generators()?;
    let (ring, n, m, d) = (input.ring, input.n(), input.m, input.d);
    let lift = HomLaw::divided_power_map(ring, n, m, &gens)?;
    let component = |i: u32| -> Result<HomLaw> {
        let f = if i == d {
            input.form(i).clone()
        } else {
            input.form(i).neg()
        };
        law_from_commutative_poly(&f, i * m)?.into_algebra(&gens)
    };
    let mut tower = HomLaw::zero(
        ring,
        n,
        m * d,
        crate::laws::LawTarget::Algebra(gens.clone()),
    );
    for i in 0..d {
        let psi_i = if i == 0 {
            HomLaw::constant(n, ring.one()).into_algebra(&gens)?
        } else {
            component(i)?
        };
        tower = tower.add(&law_product(&law_power(&lift, d - i)?, &psi_i)?)?;
    }
    component(d)?.sub(&tower)
}

/// Relations δ(e^[μ]) for every μ in `gamma_basis(n, m·d)`.
pub fn psi_presentation(input: &CliffordInput) -> Result<Presentation> {
    let delta = relation_law(input)?;
    let gens = input.generators()?;
    let rels = gamma_basis(input.n(), input.m * input.d)
        .iter()
        .map(|mu| delta.entry(mu))
        .collect::<Vec<_>>();
    Presentation::new(input.ring, gens, rels, Some(Construction::Psi))
}

/// Relations δ(z^[m·d]) = Σ_μ z^μ δ(e^[μ]) for every point z of a finite
/// coefficient ring, instead of the basis vectors e^[μ].
pub fn psi_point_relations(input: &CliffordInput) -> Result<Presentation> {
    let Some(elements) = input.ring.elements() else {
        return Err(Error::Precondition(format!(
            "cannot enumerate the points of {}",
            input.ring
        )));
    };
    let delta = relation_law(input)?;
    let gens = input.generators()?;
    let basis = gamma_basis(input.n(), input.m * input.d);
    let ctx = delta.value_context().clone();
    let mut points: Vec<Vec<Scalar>> = vec![Vec::new()];
    for _ in 0..input.n() {
        points = points
            .into_iter()
            .flat_map(|p| {
                elements.iter().map(move |e| {
                    let mut q = p.clone();
                    q.push(e.clone());
                    q
                })
            })
            .collect();
    }
    let mut rels = Vec::with_capacity(points.len());
    for z in &points {
        let mut r = NcPoly::zero(&ctx);
        for mu in &basis {
            r = r.add(&delta.entry(mu).scale(&monomial_value(z, mu)))?;
        }
        rels.push(r);
    }
    Presentation::new(input.ring, gens, rels, Some(Construction::Psi))
}

/// A quadratic form by its values `q(e_i)` and polar values
/// `b(e_i, e_j) = q(e_i + e_j) − q(e_i) − q(e_j)` for i < j.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticForm {
    diagonal: Vec<Scalar>,
    polar: BTreeMap<(usize, usize), Scalar>,
}

impl QuadraticForm {
    pub fn new(
        diagonal: Vec<Scalar>,
        polar: BTreeMap<(usize, usize), Scalar>,
    ) -> Result<QuadraticForm> {
        let n = diagonal.len();
        if n == 0 {
            return Err(Error::InvalidInput(
                "quadratic form on zero variables".into(),
            ));
        }
        let ring = diagonal[0].ring();
        for (&(i, j), v) in &polar {
            if i >= j || j >= n {
                return Err(Error::InvalidInput(format!(
                    "polar value at ({i}, {j}) needs i < j < {n}"
                )));
            }
            if v.ring() != ring {
                return Err(Error::RingMismatch {
                    left: ring,
                    right: v.ring(),
                });
            }
        }
        let polar = polar.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        Ok(QuadraticForm { diagonal, polar })
    }

    /// Reads the coefficients of a homogeneous quadratic polynomial.
    pub fn from_poly(q: &NcPoly) -> Result<QuadraticForm> {
        let n = q.context().vars.len();
        let ring = q.ring();
        let mut diagonal = vec![ring.zero(); n];
        let mut polar = BTreeMap::new();
        for (mono, c) in q.terms() {
            if !mono.aword.is_empty() || mono.degree() != 2 {
                return Err(Error::NotHomogeneous(
                    "quadratic form must be homogeneous of degree 2 in the variables".into(),
                ));
            }
            let e = mono.xpart.multidegree(n);
            let support: Vec<usize> = (0..n).filter(|&i| e[i] > 0).collect();
            match support.as_slice() {
                [i] => diagonal[*i] = diagonal[*i].add(c),
                [i, j] => {
                    let slot = polar.entry((*i, *j)).or_insert_with(|| ring.zero());
                    *slot = slot.add(c);
                }
                _ => unreachable!("degree-2 monomial"),
            }
        }
        QuadraticForm::new(diagonal, polar)
    }

    pub fn n(&self) -> usize {
        self.diagonal.len()
    }

    pub fn ring(&self) -> Ring {
        self.diagonal[0].ring()
    }

    pub fn diagonal(&self, i: usize) -> &Scalar {
        &self.diagonal[i]
    }

    pub fn polar(&self, i: usize, j: usize) -> Scalar {
        let key = (i.min(j), i.max(j));
        self.polar
            .get(&key)
            .cloned()
            .unwrap_or_else(|| self.ring().zero())
    }

    /// `Σ q(e_i) x_i² + Σ_{i<j} b(e_i, e_j) x_i x_j` over `vars`.
    pub fn to_poly(&self, vars: &Alphabet) -> Result<NcPoly> {
        if vars.len() != self.n() {
            return Err(Error::InvalidInput(format!(
                "{} variables for a form in {}",
                vars.len(),
                self.n()
            )));
        }
        let ctx = PolyContext::commutative(self.ring(), vars.clone());
        let mut out = NcPoly::zero(&ctx);
        for (i, c) in self.diagonal.iter().enumerate() {
            let mut e = vec![0; self.n()];
            e[i] = 2;
            out = out.add(&NcPoly::x_monomial(&ctx, &e).scale(c))?;
        }
        for (&(i, j), c) in &self.polar {
            let mut e = vec![0; self.n()];
            e[i] = 1;
            e[j] = 1;
            out = out.add(&NcPoly::x_monomial(&ctx, &e).scale(c))?;
        }
        Ok(out)
    }

    /// `q(z)`.
    pub fn eval(&self, z: &[Scalar]) -> Scalar {
        let mut acc = self.ring().zero();
        for (i, c) in self.diagonal.iter().enumerate() {
            acc = acc.add(&c.mul(&z[i]).mul(&z[i]));
        }
        for (&(i, j), c) in &self.polar {
            acc = acc.add(&c.mul(&z[i]).mul(&z[j]));
        }
        acc
    }
}

fn default_vars(n: usize) -> Alphabet {
    let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    Alphabet::new(&names).expect("valid names")
}

/// The classical Clifford algebra of `q`: the ψ construction with d = 2,
/// m = 1, f_1 = 0 and f_2 = q.
pub fn quadratic_presentation(q: &QuadraticForm) -> Result<Presentation> {
    let vars = default_vars(q.n());
    let f2 = q.to_poly(&vars)?;
    let input = CliffordInput::new(
        q.ring(),
        vars,
        1,
        2,
        BTreeMap::from([(2, f2)]),
        XMode::Commuting,
    )?;
    let p = psi_presentation(&input)?;
    Presentation::new(
        p.ring,
        p.generators,
        p.relations,
        Some(Construction::Quadratic),
    )
}

/// `e_i e_j − e_j e_i − ψ(e_i, e_j)` for i < j. A nonzero diagonal value
/// would force the unit relation and is rejected.
pub fn weyl_presentation(ring: Ring, psi: &[Vec<Scalar>]) -> Result<Presentation> {
    let n = psi.len();
    if n == 0 || psi.iter().any(|row| row.len() != n) {
        return Err(Error::InvalidInput(
            "ψ must be a nonempty square matrix".into(),
        ));
    }
    for (i, row) in psi.iter().enumerate() {
        if let Some(bad) = row.iter().find(|c| c.ring() != ring) {
            return Err(Error::RingMismatch {
                left: ring,
                right: bad.ring(),
            });
        }
        if !row[i].is_zero() {
            return Err(Error::InconsistentForm(format!(
                "ψ(e{0}, e{0}) = {1} forces the relation {1} = 0",
                i + 1,
                row[i]
            )));
        }
    }
    let gens = generator_names(n, 1, &Alphabet::empty())?;
    let ctx = PolyContext::free(ring, gens.clone());
    let mut rels = Vec::new();
    for (i, row) in psi.iter().enumerate() {
        for (j, c) in row.iter().enumerate().skip(i + 1) {
            let (ei, ej) = (NcPoly::generator(&ctx, i), NcPoly::generator(&ctx, j));
            let r = ei
                .mul(&ej)?
                .sub(&ej.mul(&ei)?)?
                .sub(&NcPoly::constant(&ctx, c.clone()))?;
            rels.push(r);
        }
    }
    Presentation::new(ring, gens, rels, Some(Construction::Weyl))
}

/// How two ideals compare, up to a degree bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Comparison {
    IsomorphicUpToBound,
    /// The ψ ideal lies in the KL ideal but not conversely.
    PsiInKl,
    /// The KL ideal lies in the ψ ideal but not conversely.
    KlInPsi,
    Incomparable,
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Comparison::IsomorphicUpToBound => "isomorphic-up-to-bound",
            Comparison::PsiInKl | Comparison::KlInPsi => "proper-inclusion",
            Comparison::Incomparable => "incomparable",
        })
    }
}

/// Per-relation membership verdicts in both directions.
#[derive(Debug, Clone)]
pub struct ComparisonReport {
    pub bound: usize,
    pub kl: Presentation,
    pub psi: Presentation,
    /// Each ψ relation tested against the KL ideal.
    pub psi_in_kl: Vec<(NcPoly, MembershipVerdict)>,
    /// Each KL relation tested against the ψ ideal.
    pub kl_in_psi: Vec<(NcPoly, MembershipVerdict)>,
    pub outcome: Comparison,
}

impl ComparisonReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (title, rows) in [
            ("psi in kl", &self.psi_in_kl),
            ("kl in psi", &self.kl_in_psi),
        ] {
            out.push_str(&format!("{title}:\n"));
            for (r, v) in rows {
                out.push_str(&format!("  {r}: {v}\n"));
            }
        }
        let direction = match self.outcome {
            Comparison::PsiInKl => " (psi ideal inside kl ideal)",
            Comparison::KlInPsi => " (kl ideal inside psi ideal)",
            _ => "",
        };
        out.push_str(&format!("result: {}{direction}\n", self.outcome));
        out
    }
}

/// Tests every relation of each presentation against the other ideal. The
/// two constructions name the generator e_ν identically, so the comparison
/// map is the identity on generators.
pub fn comparison_check(input: &CliffordInput, bound: usize) -> Result<ComparisonReport> {
    let kl = kl_presentation(input)?;
    let psi = psi_presentation(input)?;
    let verdicts =
        |rels: &Presentation, ideal: &Presentation| -> Result<Vec<(NcPoly, MembershipVerdict)>> {
            let gb = buchberger_bounded(&ideal.context(), ideal.relations(), bound)?;
            rels.relations()
                .iter()
                .map(|r| Ok((r.clone(), gb.is_member(r)?)))
                .collect()
        };
    let psi_in_kl = verdicts(&psi, &kl)?;
    let kl_in_psi = verdicts(&kl, &psi)?;
    let all =
        |v: &[(NcPoly, MembershipVerdict)]| v.iter().all(|(_, m)| *m == MembershipVerdict::Member);
    let outcome = match (all(&psi_in_kl), all(&kl_in_psi)) {
        (true, true) => Comparison::IsomorphicUpToBound,
        (true, false) => Comparison::PsiInKl,
        (false, true) => Comparison::KlInPsi,
        (false, false) => Comparison::Incomparable,
    };
    Ok(ComparisonReport {
        bound,
        kl,
        psi,
        psi_in_kl,
        kl_in_psi,
        outcome,
    })
}

/// `x0^d − Σ_{l=1}^{d} x0^{d−l} f_{l·m}` in the variables `x0, vars…`,
/// where x0 carries weight m. The first variable is named `x0` unless that
/// collides with an input variable, in which case underscores are appended.
pub fn hypersurface_equation(input: &CliffordInput) -> Result<NcPoly> {
    let mut lead = String::from("x0");
    while input.vars.index_of(&lead).is_some() {
        lead.push('_');
    }
    let mut names = vec![lead];
    names.extend(input.vars.names().iter().cloned());
    let ctx = PolyContext::commutative(input.ring, Alphabet::new(&names)?);
    let x0 = NcPoly::variable(&ctx, 0);
    let mut out = x0.pow(input.d);
    for l in 1..=input.d {
        let f = input.form(l).embed(&ctx)?;
        out = out.sub(&x0.pow(input.d - l).mul(&f)?)?;
    }
    Ok(out)
}

/// Whether every term of a commutative polynomial has weighted degree
/// `degree` under the given variable weights.
pub fn is_weighted_homogeneous(p: &NcPoly, weights: &[u32], degree: u32) -> bool {
    let n = p.context().vars.len();
    p.terms().all(|(mono, _)| {
        let e = mono.xpart.multidegree(n);
        e.iter().zip(weights).map(|(k, w)| k * w).sum::<u32>() == degree
    })
}
