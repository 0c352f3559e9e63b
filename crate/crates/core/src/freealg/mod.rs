//! The mixed algebra R<a_1..a_N>[x_1..x_n]: noncommuting generators `a`
//! together with central variables `x`.
//!
//! The `x` variables are central with respect to the `a` alphabet. Whether
//! they also commute among themselves is controlled by [`XMode`].

mod format;
mod parse;

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::coeffs::{Ring, Scalar};
use crate::error::{Error, Result};

pub use format::{format_poly, format_word};
pub use parse::parse_poly;

/// An ordered list of distinct generator names. Index 0 has the lowest
/// precedence in the monomial order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Alphabet {
    names: Vec<String>,
}

pub(crate) fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Alphabet {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Alphabet> {
        let mut out: Vec<String> = Vec::with_capacity(names.len());
        for n in names {
            let n = n.as_ref();
            if !valid_name(n) {
                return Err(Error::InvalidName(n.to_string()));
            }
            if out.iter().any(|m| m == n) {
                return Err(Error::InvalidName(format!("{n} (duplicate)")));
            }
            out.push(n.to_string());
        }
        Ok(Alphabet { names: out })
    }

    pub fn empty() -> Alphabet {
        Alphabet::default()
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.names.join(", "))
    }
}

/// How the central `x` variables behave among themselves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum XMode {
    Commuting,
    #[default]
    Ordered,
}

impl std::str::FromStr for XMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<XMode> {
        match s.trim() {
            "ordered" => Ok(XMode::Ordered),
            "commuting" => Ok(XMode::Commuting),
            other => Err(Error::InvalidInput(format!(
                "unknown mode `{other}` (expected ordered or commuting)"
            ))),
        }
    }
}

impl fmt::Display for XMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            XMode::Commuting => write!(f, "commuting"),
            XMode::Ordered => write!(f, "ordered"),
        }
    }
}

/// A word in the generators, compared degree-lexicographically with the
/// letter order given by alphabet index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<u32>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn letter(i: usize) -> Word {
        Word(vec![i as u32])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[u32] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Position of the leftmost occurrence of `sub` as a factor.
    pub fn find(&self, sub: &[u32]) -> Option<usize> {
        if sub.len() > self.0.len() {
            return None;
        }
        (0..=self.0.len() - sub.len()).find(|&i| &self.0[i..i + sub.len()] == sub)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The central part of a mixed monomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum XPart {
    /// Exponent vector, one entry per variable.
    Exponents(Vec<u32>),
    /// Word in the variables.
    Ordered(Vec<u32>),
}

impl XPart {
    pub fn unit(mode: XMode, nvars: usize) -> XPart {
        match mode {
            XMode::Commuting => XPart::Exponents(vec![0; nvars]),
            XMode::Ordered => XPart::Ordered(Vec::new()),
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            XPart::Exponents(e) => e.iter().map(|&k| k as usize).sum(),
            XPart::Ordered(w) => w.len(),
        }
    }

    pub fn is_unit(&self) -> bool {
        self.degree() == 0
    }

    /// Exponent vector of the part (multidegree), for either representation.
    pub fn multidegree(&self, nvars: usize) -> Vec<u32> {
        match self {
            XPart::Exponents(e) => e.clone(),
            XPart::Ordered(w) => {
                let mut e = vec![0; nvars];
                for &i in w {
                    e[i as usize] += 1;
                }
                e
            }
        }
    }

    /// The canonical part of a multidegree: the exponent vector itself, or
    /// the sorted word x_1^e1 x_2^e2 ... in ordered mode.
    pub fn from_exponents(mode: XMode, exps: &[u32]) -> XPart {
        match mode {
            XMode::Commuting => XPart::Exponents(exps.to_vec()),
            XMode::Ordered => {
                let mut w = Vec::new();
                for (i, &k) in exps.iter().enumerate() {
                    w.extend(std::iter::repeat_n(i as u32, k as usize));
                }
                XPart::Ordered(w)
            }
        }
    }

    fn mul(&self, other: &XPart) -> XPart {
        match (self, other) {
            (XPart::Exponents(a), XPart::Exponents(b)) => {
                XPart::Exponents(a.iter().zip(b).map(|(x, y)| x + y).collect())
            }
            (XPart::Ordered(a), XPart::Ordered(b)) => {
                let mut w = a.clone();
                w.extend_from_slice(b);
                XPart::Ordered(w)
            }
            _ => panic!("mixed x-part representations"),
        }
    }
}

// Degree first; then the first-declared variable counts as largest, the
// usual convention for commutative polynomials (x^2 > x*y > y^2).
impl Ord for XPart {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| match (self, other) {
                (XPart::Exponents(a), XPart::Exponents(b)) => a.cmp(b),
                (XPart::Ordered(a), XPart::Ordered(b)) => b.cmp(a),
                (XPart::Exponents(_), XPart::Ordered(_)) => Ordering::Less,
                (XPart::Ordered(_), XPart::Exponents(_)) => Ordering::Greater,
            })
    }
}

impl PartialOrd for XPart {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A noncommutative generator word times a central x-part.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MixedMonomial {
    pub aword: Word,
    pub xpart: XPart,
}

impl MixedMonomial {
    pub fn degree(&self) -> usize {
        self.aword.len() + self.xpart.degree()
    }

    fn mul(&self, other: &MixedMonomial) -> MixedMonomial {
        MixedMonomial {
            aword: self.aword.concat(&other.aword),
            xpart: self.xpart.mul(&other.xpart),
        }
    }
}

impl Ord for MixedMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.xpart.cmp(&other.xpart))
            .then_with(|| self.aword.cmp(&other.aword))
    }
}

impl PartialOrd for MixedMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Ring, x-mode and the two alphabets shared by a family of polynomials.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyContext {
    pub ring: Ring,
    pub mode: XMode,
    pub gens: Alphabet,
    pub vars: Alphabet,
}

impl PolyContext {
    pub fn new(
        ring: Ring,
        mode: XMode,
        gens: Alphabet,
        vars: Alphabet,
    ) -> Result<Arc<PolyContext>> {
        if let Some(n) = gens.names().iter().find(|n| vars.index_of(n).is_some()) {
            return Err(Error::InvalidName(format!(
                "{n} is both a generator and a variable"
            )));
        }
        Ok(Arc::new(PolyContext {
            ring,
            mode,
            gens,
            vars,
        }))
    }

    /// The free algebra on `gens` with no central variables.
    pub fn free(ring: Ring, gens: Alphabet) -> Arc<PolyContext> {
        Arc::new(PolyContext {
            ring,
            mode: XMode::Ordered,
            gens,
            vars: Alphabet::empty(),
        })
    }

    /// Commutative polynomials in `vars`.
    pub fn commutative(ring: Ring, vars: Alphabet) -> Arc<PolyContext> {
        Arc::new(PolyContext {
            ring,
            mode: XMode::Commuting,
            gens: Alphabet::empty(),
            vars,
        })
    }

    /// The generator-only context that coefficient extraction lands in.
    pub fn gens_only(&self) -> Arc<PolyContext> {
        PolyContext::free(self.ring, self.gens.clone())
    }

    pub fn unit_monomial(&self) -> MixedMonomial {
        MixedMonomial {
            aword: Word::empty(),
            xpart: XPart::unit(self.mode, self.vars.len()),
        }
    }
}

pub(crate) fn same_context(a: &Arc<PolyContext>, b: &Arc<PolyContext>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// A finite sum of mixed monomials with nonzero coefficients.
#[derive(Clone)]
pub struct NcPoly {
    ctx: Arc<PolyContext>,
    terms: HashMap<MixedMonomial, Scalar>,
}

impl PartialEq for NcPoly {
    fn eq(&self, other: &Self) -> bool {
        same_context(&self.ctx, &other.ctx) && self.terms == other.terms
    }
}

impl Eq for NcPoly {}

impl fmt::Debug for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NcPoly({})", format_poly(self))
    }
}

impl fmt::Display for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_poly(self))
    }
}

impl NcPoly {
    pub fn zero(ctx: &Arc<PolyContext>) -> NcPoly {
        NcPoly {
            ctx: ctx.clone(),
            terms: HashMap::new(),
        }
    }

    pub fn one(ctx: &Arc<PolyContext>) -> NcPoly {
        NcPoly::constant(ctx, ctx.ring.one())
    }

    pub fn constant(ctx: &Arc<PolyContext>, c: Scalar) -> NcPoly {
        NcPoly::monomial(ctx, ctx.unit_monomial(), c)
    }

    pub fn monomial(ctx: &Arc<PolyContext>, mono: MixedMonomial, c: Scalar) -> NcPoly {
        let mut p = NcPoly::zero(ctx);
        p.add_term(mono, c);
        p
    }

    /// The word `w` in the generators with coefficient one.
    pub fn word(ctx: &Arc<PolyContext>, w: Word) -> NcPoly {
        let mono = MixedMonomial {
            aword: w,
            xpart: XPart::unit(ctx.mode, ctx.vars.len()),
        };
        NcPoly::monomial(ctx, mono, ctx.ring.one())
    }

    pub fn generator(ctx: &Arc<PolyContext>, i: usize) -> NcPoly {
        NcPoly::word(ctx, Word::letter(i))
    }

    /// The central monomial with the given multidegree (sorted word in
    /// ordered mode).
    pub fn x_monomial(ctx: &Arc<PolyContext>, exps: &[u32]) -> NcPoly {
        let mono = MixedMonomial {
            aword: Word::empty(),
            xpart: XPart::from_exponents(ctx.mode, exps),
        };
        NcPoly::monomial(ctx, mono, ctx.ring.one())
    }

    pub fn variable(ctx: &Arc<PolyContext>, j: usize) -> NcPoly {
        let mut e = vec![0; ctx.vars.len()];
        e[j] = 1;
        NcPoly::x_monomial(ctx, &e)
    }

    pub fn context(&self) -> &Arc<PolyContext> {
        &self.ctx
    }

    pub fn ring(&self) -> Ring {
        self.ctx.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in unspecified order.
    pub fn terms(&self) -> impl Iterator<Item = (&MixedMonomial, &Scalar)> {
        self.terms.iter()
    }

    /// Terms sorted descending in the monomial order.
    pub fn sorted_terms(&self) -> Vec<(&MixedMonomial, &Scalar)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| b.0.cmp(a.0));
        v
    }

    pub fn coefficient(&self, mono: &MixedMonomial) -> Scalar {
        self.terms
            .get(mono)
            .cloned()
            .unwrap_or_else(|| self.ctx.ring.zero())
    }

    /// Total degree; zero polynomial has degree 0.
    pub fn degree(&self) -> usize {
        self.terms
            .keys()
            .map(MixedMonomial::degree)
            .max()
            .unwrap_or(0)
    }

    pub fn is_x_free(&self) -> bool {
        self.terms.keys().all(|m| m.xpart.is_unit())
    }

    /// Largest monomial and its coefficient.
    pub fn leading_term(&self) -> Option<(&MixedMonomial, &Scalar)> {
        self.terms.iter().max_by(|a, b| a.0.cmp(b.0))
    }

    /// Adds `c * mono` in place, dropping the term if it cancels.
    pub fn add_term(&mut self, mono: MixedMonomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(c.ring(), self.ctx.ring);
        match self.terms.entry(mono) {
            std::collections::hash_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    fn check_context(&self, other: &NcPoly) -> Result<()> {
        if same_context(&self.ctx, &other.ctx) {
            Ok(())
        } else {
            Err(Error::ContextMismatch(format!(
                "{} {} [{}; {}] vs {} {} [{}; {}]",
                self.ctx.ring,
                self.ctx.mode,
                self.ctx.gens,
                self.ctx.vars,
                other.ctx.ring,
                other.ctx.mode,
                other.ctx.gens,
                other.ctx.vars
            )))
        }
    }

    pub fn add(&self, other: &NcPoly) -> Result<NcPoly> {
        self.check_context(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &NcPoly) -> Result<NcPoly> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> NcPoly {
        NcPoly {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> NcPoly {
        let mut out = NcPoly::zero(&self.ctx);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.mul(s));
        }
        out
    }

    /// Bilinear product: generator words concatenate, x-parts multiply in
    /// the ambient mode.
    pub fn mul(&self, other: &NcPoly) -> Result<NcPoly> {
        self.check_context(other)?;
        let mut out = NcPoly::zero(&self.ctx);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1.mul(c2));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> NcPoly {
        let mut acc = NcPoly::one(&self.ctx);
        for _ in 0..k {
            acc = acc.mul(self).expect("same context");
        }
        acc
    }

    /// Groups terms by x-part. Values live in the generator-only context;
    /// `Σ value * xpart` reassembles `self`.
    pub fn extract_coefficients(&self) -> BTreeMap<XPart, NcPoly> {
        let target = self.ctx.gens_only();
        let mut out: BTreeMap<XPart, NcPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let entry = out
                .entry(m.xpart.clone())
                .or_insert_with(|| NcPoly::zero(&target));
            entry.add_term(
                MixedMonomial {
                    aword: m.aword.clone(),
                    xpart: XPart::Ordered(Vec::new()),
                },
                c.clone(),
            );
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// Re-expresses a polynomial in another context with the same ring and
    /// generators (mapped by name), provided every x-part embeds.
    pub fn embed(&self, ctx: &Arc<PolyContext>) -> Result<NcPoly> {
        if self.ctx.ring != ctx.ring {
            return Err(Error::RingMismatch {
                left: self.ctx.ring,
                right: ctx.ring,
            });
        }
        let gen_map = map_alphabet(&self.ctx.gens, &ctx.gens)?;
        let var_map = map_alphabet(&self.ctx.vars, &ctx.vars)?;
        let mut out = NcPoly::zero(ctx);
        for (m, c) in &self.terms {
            let aword = Word(m.aword.0.iter().map(|&i| gen_map[i as usize]).collect());
            let exps = m.xpart.multidegree(self.ctx.vars.len());
            let mut mapped = vec![0u32; ctx.vars.len()];
            for (i, &k) in exps.iter().enumerate() {
                if k > 0 {
                    mapped[var_map[i] as usize] += k;
                }
            }
            // commutative monomials embed as sorted words
            let xpart = match (&m.xpart, ctx.mode) {
                (XPart::Ordered(w), XMode::Ordered) => {
                    XPart::Ordered(w.iter().map(|&i| var_map[i as usize]).collect())
                }
                (_, mode) => XPart::from_exponents(mode, &mapped),
            };
            out.add_term(MixedMonomial { aword, xpart }, c.clone());
        }
        Ok(out)
    }

    /// Maps an ordered-mode polynomial to the commuting mode by forgetting
    /// the order of the x-letters.
    pub fn symmetrize(&self) -> NcPoly {
        let ctx = Arc::new(PolyContext {
            mode: XMode::Commuting,
            ..(*self.ctx).clone()
        });
        let n = self.ctx.vars.len();
        let mut out = NcPoly::zero(&ctx);
        for (m, c) in &self.terms {
            out.add_term(
                MixedMonomial {
                    aword: m.aword.clone(),
                    xpart: XPart::Exponents(m.xpart.multidegree(n)),
                },
                c.clone(),
            );
        }
        out
    }

    /// Coefficients lifted ZZ -> QQ.
    pub fn lift_to_rationals(&self) -> NcPoly {
        let ctx = Arc::new(PolyContext {
            ring: Ring::rationals(),
            ..(*self.ctx).clone()
        });
        self.map_coefficients(&ctx, Scalar::lift_to_rationals)
    }

    /// Coefficients reduced ZZ -> GF(p).
    pub fn reduce_to(&self, ring: Ring) -> Result<NcPoly> {
        let ctx = Arc::new(PolyContext {
            ring,
            ..(*self.ctx).clone()
        });
        let mut out = NcPoly::zero(&ctx);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.reduce_to(ring)?);
        }
        Ok(out)
    }

    fn map_coefficients(&self, ctx: &Arc<PolyContext>, f: impl Fn(&Scalar) -> Scalar) -> NcPoly {
        let mut out = NcPoly::zero(ctx);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    /// Divides by the leading coefficient over a field; over ZZ only fixes
    /// the sign so the leading coefficient is positive.
    pub fn normalized(&self) -> NcPoly {
        let Some((_, lc)) = self.leading_term() else {
            return self.clone();
        };
        if self.ctx.ring.is_field() {
            let inv = lc.inv().expect("nonzero in a field");
            self.scale(&inv)
        } else if lc.is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }
}

fn map_alphabet(from: &Alphabet, to: &Alphabet) -> Result<Vec<u32>> {
    from.names()
        .iter()
        .map(|n| {
            to.index_of(n).map(|i| i as u32).ok_or_else(|| {
                Error::ContextMismatch(format!("`{n}` missing from target alphabet"))
            })
        })
        .collect()
}
