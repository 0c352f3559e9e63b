//! Bounded two-sided Groebner bases in the free algebra under deglex:
//! overlap completion up to a degree bound, normal forms, membership
//! verdicts and normal-word counts.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::coeffs::{Ring, RingKind, Scalar};
use crate::error::{Error, Result};
use crate::freealg::{format_word, MixedMonomial, NcPoly, PolyContext, Word, XPart};

mod oracle;

pub use oracle::{span_membership_oracle, span_membership_oracle_capped, DEFAULT_WORD_CAP};

/// Linear combination of words, ordered by deglex.
pub(crate) type Lin = BTreeMap<Word, Scalar>;

pub(crate) fn lin_add(p: &mut Lin, w: Word, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match p.entry(w) {
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let s = e.get().add(&c);
            if s.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
    }
}

/// `u · p · v` scaled by `c`, added into `acc`.
pub(crate) fn lin_add_sandwich(acc: &mut Lin, c: &Scalar, u: &[u32], p: &Lin, v: &[u32]) {
    for (w, d) in p {
        let mut letters = Vec::with_capacity(u.len() + w.len() + v.len());
        letters.extend_from_slice(u);
        letters.extend_from_slice(w.letters());
        letters.extend_from_slice(v);
        lin_add(acc, Word(letters), c.mul(d));
    }
}

/// Rejects polynomials with central variables and polynomials whose
/// generators differ from `gens`, then lists the terms by word.
pub(crate) fn to_lin(p: &NcPoly, ctx: &PolyContext) -> Result<Lin> {
    if p.context().gens != ctx.gens {
        return Err(Error::ContextMismatch(format!(
            "generators [{}] vs [{}]",
            p.context().gens,
            ctx.gens
        )));
    }
    if !p.is_x_free() {
        return Err(Error::ContextMismatch(
            "Groebner computations need x-free polynomials".into(),
        ));
    }
    let source = p.ring();
    let lift = source.kind() == RingKind::Integers && ctx.ring.kind() == RingKind::Rationals;
    if source != ctx.ring && !lift {
        return Err(Error::RingMismatch {
            left: ctx.ring,
            right: source,
        });
    }
    let mut out = Lin::new();
    for (m, c) in p.terms() {
        let c = if lift {
            c.lift_to_rationals()
        } else {
            c.clone()
        };
        lin_add(&mut out, m.aword.clone(), c);
    }
    Ok(out)
}

pub(crate) fn from_lin(p: &Lin, ctx: &Arc<PolyContext>) -> NcPoly {
    let mut out = NcPoly::zero(ctx);
    for (w, c) in p {
        out.add_term(
            MixedMonomial {
                aword: w.clone(),
                xpart: XPart::unit(ctx.mode, ctx.vars.len()),
            },
            c.clone(),
        );
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Rule {
    lead: Word,
    /// Monic, lead term included.
    poly: Lin,
    /// Largest degree of a product `u·g·v` (g an input relation) needed to
    /// write this element as a combination of such products.
    witness: usize,
}

/// Full reduction: the largest remaining term is rewritten by the largest
/// leading word occurring in it, at its leftmost occurrence. `trace` is
/// raised to the witness degree of every rewrite applied.
fn reduce(rules: &[&Rule], mut p: Lin, trace: &mut usize) -> Lin {
    let mut out = Lin::new();
    while let Some((w, c)) = p.pop_last() {
        let mut best: Option<(&Rule, usize)> = None;
        for r in rules {
            if best.is_none_or(|(b, _)| r.lead > b.lead) {
                if let Some(pos) = w.find(r.lead.letters()) {
                    best = Some((r, pos));
                }
            }
        }
        match best {
            None => {
                out.insert(w, c);
            }
            Some((r, pos)) => {
                let u = &w.letters()[..pos];
                let v = &w.letters()[pos + r.lead.len()..];
                *trace = (*trace).max(r.witness + u.len() + v.len());
                let neg = c.neg();
                for (t, tc) in &r.poly {
                    if *t == r.lead {
                        continue;
                    }
                    let mut letters = Vec::with_capacity(w.len() + t.len());
                    letters.extend_from_slice(u);
                    letters.extend_from_slice(t.letters());
                    letters.extend_from_slice(v);
                    lin_add(&mut p, Word(letters), neg.mul(tc));
                }
            }
        }
    }
    out
}

fn make_monic(mut p: Lin) -> Option<(Word, Lin)> {
    let (lead, lc) = p.last_key_value().map(|(w, c)| (w.clone(), c.clone()))?;
    if !lc.is_one() {
        let inv = lc.inv().expect("field coefficients");
        for c in p.values_mut() {
            *c = c.mul(&inv);
        }
    }
    Some((lead, p))
}

/// Overlaps `k` such that the length-k suffix of `left` equals the length-k
/// prefix of `right`, with both leads strictly longer than k.
fn overlap_lengths(left: &Word, right: &Word) -> Vec<usize> {
    let (l, r) = (left.letters(), right.letters());
    (1..l.len().min(r.len()))
        .filter(|&k| l[l.len() - k..] == r[..k])
        .collect()
}

/// S-polynomial of the overlap `u·s·v` with `left.lead = u·s`,
/// `right.lead = s·v`: `left · v − u · right`.
/// Returns the witness degree alongside.
fn s_polynomial(left: &Rule, right: &Rule, k: usize) -> (Lin, usize) {
    let one = left
        .poly
        .values()
        .next()
        .expect("nonempty rule")
        .ring()
        .one();
    let v = &right.lead.letters()[k..];
    let u = &left.lead.letters()[..left.lead.len() - k];
    let mut out = Lin::new();
    lin_add_sandwich(&mut out, &one, &[], &left.poly, v);
    lin_add_sandwich(&mut out, &one.neg(), u, &right.poly, &[]);
    (out, (left.witness + v.len()).max(right.witness + u.len()))
}

/// Options for [`buchberger_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GbOptions {
    /// Lift integer relations to the rationals (with a warning) instead of
    /// failing with `NotAField`.
    pub lift_integers: bool,
}

impl Default for GbOptions {
    fn default() -> Self {
        GbOptions {
            lift_integers: true,
        }
    }
}

/// Outcome of a membership test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MembershipVerdict {
    Member,
    CertifiedNonMember,
    NotDetectedUpTo(usize),
}

impl fmt::Display for MembershipVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MembershipVerdict::Member => f.write_str("member"),
            MembershipVerdict::CertifiedNonMember => f.write_str("certified-non-member"),
            MembershipVerdict::NotDetectedUpTo(d) => write!(f, "not-detected-up-to {d}"),
        }
    }
}

/// A reduced basis closed under overlaps up to `bound`. `complete` certifies
/// that every overlap of the final basis, of any degree, reduces to zero.
#[derive(Debug, Clone)]
pub struct GBState {
    ctx: Arc<PolyContext>,
    bound: usize,
    complete: bool,
    rules: Vec<Rule>,
}

#[derive(Debug)]
enum Pending {
    Poly(Lin, usize),
    Overlap { left: usize, right: usize, k: usize },
}

struct Completion {
    rules: Vec<Option<Rule>>,
    queue: BTreeMap<(usize, u64), Pending>,
    seq: u64,
    bound: usize,
}

impl Completion {
    fn alive(&self) -> Vec<&Rule> {
        self.rules.iter().flatten().collect()
    }

    fn push(&mut self, degree: usize, item: Pending) {
        self.queue.insert((degree, self.seq), item);
        self.seq += 1;
    }

    fn add_rule(&mut self, lead: Word, poly: Lin, witness: usize) {
        for slot in self.rules.iter_mut() {
            if slot
                .as_ref()
                .is_some_and(|r| r.lead.find(lead.letters()).is_some())
            {
                let old = slot.take().expect("checked above");
                let degree = old.lead.len();
                self.queue
                    .insert((degree, self.seq), Pending::Poly(old.poly, old.witness));
                self.seq += 1;
            }
        }
        let id = self.rules.len();
        self.rules.push(Some(Rule {
            lead,
            poly,
            witness,
        }));
        let new_lead = self.rules[id].as_ref().expect("just pushed").lead.clone();
        let others: Vec<(usize, Word)> = self
            .rules
            .iter()
            .enumerate()
            .filter_map(|(j, r)| r.as_ref().map(|r| (j, r.lead.clone())))
            .collect();
        for (j, lead_j) in others {
            for k in overlap_lengths(&new_lead, &lead_j) {
                let degree = new_lead.len() + lead_j.len() - k;
                if degree <= self.bound {
                    self.push(
                        degree,
                        Pending::Overlap {
                            left: id,
                            right: j,
                            k,
                        },
                    );
                }
            }
            if j != id {
                for k in overlap_lengths(&lead_j, &new_lead) {
                    let degree = new_lead.len() + lead_j.len() - k;
                    if degree <= self.bound {
                        self.push(
                            degree,
                            Pending::Overlap {
                                left: j,
                                right: id,
                                k,
                            },
                        );
                    }
                }
            }
        }
    }

    fn run(&mut self) {
        while let Some((_, item)) = self.queue.pop_first() {
            let (poly, mut witness) = match item {
                Pending::Poly(p, w) => (p, w),
                Pending::Overlap { left, right, k } => {
                    match (&self.rules[left], &self.rules[right]) {
                        (Some(l), Some(r)) => s_polynomial(l, r, k),
                        _ => continue,
                    }
                }
            };
            let reduced = reduce(&self.alive(), poly, &mut witness);
            if let Some((lead, poly)) = make_monic(reduced) {
                self.add_rule(lead, poly, witness);
            }
        }
    }
}

/// [`buchberger_with`] with default options.
pub fn buchberger_bounded(
    ctx: &Arc<PolyContext>,
    relations: &[NcPoly],
    bound: usize,
) -> Result<GBState> {
    buchberger_with(ctx, relations, bound, GbOptions::default())
}

/// Completes `relations` (x-free polynomials over the generators of `ctx`)
/// through all overlaps of degree at most `bound`.
pub fn buchberger_with(
    ctx: &Arc<PolyContext>,
    relations: &[NcPoly],
    bound: usize,
    options: GbOptions,
) -> Result<GBState> {
    let ring = match ctx.ring.kind() {
        RingKind::Integers if options.lift_integers => {
            log::warn!("integer relations lifted to QQ for completion");
            Ring::rationals()
        }
        RingKind::Integers => return Err(Error::NotAField(ctx.ring)),
        _ => ctx.ring,
    };
    let gb_ctx = PolyContext::free(ring, ctx.gens.clone());
    let mut inputs = Vec::with_capacity(relations.len());
    for r in relations {
        if r.ring() != ctx.ring {
            return Err(Error::RingMismatch {
                left: ctx.ring,
                right: r.ring(),
            });
        }
        inputs.push(to_lin(r, &gb_ctx)?);
    }
    let required = inputs
        .iter()
        .filter_map(|p| p.last_key_value().map(|(w, _)| w.len()))
        .max()
        .unwrap_or(0);
    if bound < required {
        return Err(Error::BoundTooSmall { bound, required });
    }
    let mut state = Completion {
        rules: Vec::new(),
        queue: BTreeMap::new(),
        seq: 0,
        bound,
    };
    for p in inputs {
        if let Some((w, _)) = p.last_key_value() {
            let degree = w.len();
            state.push(degree, Pending::Poly(p, degree));
        }
    }
    state.run();

    let mut rules: Vec<Rule> = state.rules.into_iter().flatten().collect();
    rules.sort_by(|a, b| a.lead.cmp(&b.lead));
    let mut reduced = Vec::with_capacity(rules.len());
    for (i, r) in rules.iter().enumerate() {
        let others: Vec<&Rule> = rules
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, r)| r)
            .collect();
        let mut tail = r.poly.clone();
        let lc = tail.remove(&r.lead).expect("lead present");
        let mut witness = r.witness;
        let mut poly = reduce(&others, tail, &mut witness);
        poly.insert(r.lead.clone(), lc);
        reduced.push(Rule {
            lead: r.lead.clone(),
            poly,
            witness,
        });
    }
    let complete = certify(&reduced);
    Ok(GBState {
        ctx: gb_ctx,
        bound,
        complete,
        rules: reduced,
    })
}

/// Diamond-lemma check: every overlap of the basis reduces to zero.
fn certify(rules: &[Rule]) -> bool {
    let refs: Vec<&Rule> = rules.iter().collect();
    for l in rules {
        for r in rules {
            for k in overlap_lengths(&l.lead, &r.lead) {
                let (s, _) = s_polynomial(l, r, k);
                if !reduce(&refs, s, &mut 0).is_empty() {
                    return false;
                }
            }
        }
    }
    true
}

/// Per-degree normal-word counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientCounts {
    pub per_degree: Vec<u128>,
    /// False when the basis is not certified: the counts are then upper
    /// bounds.
    pub exact: bool,
}

impl QuotientCounts {
    pub fn total(&self) -> u128 {
        self.per_degree.iter().sum()
    }

    /// Running totals over degrees 0..=k.
    pub fn cumulative(&self) -> Vec<u128> {
        self.per_degree
            .iter()
            .scan(0u128, |acc, c| {
                *acc += c;
                Some(*acc)
            })
            .collect()
    }
}

impl GBState {
    pub fn context(&self) -> &Arc<PolyContext> {
        &self.ctx
    }

    pub fn ring(&self) -> Ring {
        self.ctx.ring
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    /// Leading words, ascending.
    pub fn leads(&self) -> Vec<Word> {
        self.rules.iter().map(|r| r.lead.clone()).collect()
    }

    /// Basis polynomials (monic), in ascending order of leading word.
    pub fn basis(&self) -> Vec<NcPoly> {
        self.rules
            .iter()
            .map(|r| from_lin(&r.poly, &self.ctx))
            .collect()
    }

    /// Normal form of an x-free polynomial over the same generators. Integer
    /// coefficients are accepted when the basis was lifted to the rationals.
    pub fn normal_form(&self, p: &NcPoly) -> Result<NcPoly> {
        Ok(self.normal_form_traced(p)?.0)
    }

    /// Normal form together with the largest degree of an input-relation
    /// product `u·g·v` used by the reduction (0 when nothing was rewritten).
    /// A zero normal form is thus a witness of membership in the span of
    /// such products up to that degree.
    pub fn normal_form_traced(&self, p: &NcPoly) -> Result<(NcPoly, usize)> {
        let lin = to_lin(p, &self.ctx)?;
        let refs: Vec<&Rule> = self.rules.iter().collect();
        let mut trace = 0;
        let nf = reduce(&refs, lin, &mut trace);
        Ok((from_lin(&nf, &self.ctx), trace))
    }

    pub fn is_member(&self, p: &NcPoly) -> Result<MembershipVerdict> {
        let nf = self.normal_form(p)?;
        Ok(if nf.is_zero() {
            MembershipVerdict::Member
        } else if self.complete {
            MembershipVerdict::CertifiedNonMember
        } else {
            MembershipVerdict::NotDetectedUpTo(self.bound)
        })
    }

    /// Counts of normal words of each length 0..=max_degree.
    pub fn quotient_dimension(&self, max_degree: usize) -> Result<QuotientCounts> {
        if max_degree > self.bound && !self.complete {
            return Err(Error::BoundExceeded {
                requested: max_degree,
                bound: self.bound,
            });
        }
        let letters = self.ctx.gens.len() as u32;
        let window = self
            .rules
            .iter()
            .map(|r| r.lead.len())
            .max()
            .unwrap_or(1)
            .saturating_sub(1);
        // states are the last `window` letters of a normal word
        let mut states: HashMap<Vec<u32>, u128> = HashMap::from([(Vec::new(), 1)]);
        let mut per_degree = vec![1u128];
        for _ in 0..max_degree {
            let mut next: HashMap<Vec<u32>, u128> = HashMap::new();
            for (state, count) in &states {
                for x in 0..letters {
                    let mut w = state.clone();
                    w.push(x);
                    if self.rules.iter().any(|r| w.ends_with(r.lead.letters())) {
                        continue;
                    }
                    if w.len() > window {
                        w.remove(0);
                    }
                    *next.entry(w).or_insert(0) += count;
                }
            }
            per_degree.push(next.values().sum());
            states = next;
        }
        Ok(QuotientCounts {
            per_degree,
            exact: self.complete,
        })
    }

    /// Text export: one `lead: <word> rel: <poly>` line per basis element,
    /// then `complete: true|false`.
    pub fn export(&self) -> String {
        let mut out = String::new();
        for r in &self.rules {
            out.push_str(&format!(
                "lead: {} rel: {}\n",
                format_word(&r.lead, &self.ctx.gens),
                from_lin(&r.poly, &self.ctx)
            ));
        }
        out.push_str(&format!("complete: {}\n", self.complete));
        out
    }
}
