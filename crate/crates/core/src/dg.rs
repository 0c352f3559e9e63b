//! Free differential graded algebras on generators with a homological
//! degree and a positive internal weight, and their bigraded homology.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::coeffs::Ring;
use crate::error::{Error, Result};
use crate::freealg::{parse_poly, Alphabet, NcPoly, PolyContext, Word};
use crate::linalg::{rank, SparseRow};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DgGenerator {
    pub name: String,
    pub hdeg: u32,
    pub weight: u32,
}

impl DgGenerator {
    pub fn new(name: &str, hdeg: u32, weight: u32) -> DgGenerator {
        DgGenerator {
            name: name.to_string(),
            hdeg,
            weight,
        }
    }
}

/// A free dg algebra over a field with the differential fixed on
/// generators and extended by the Leibniz rule
/// `d(uv) = d(u) v + (−1)^{hdeg u} u d(v)`.
#[derive(Debug, Clone)]
pub struct DgAlgebra {
    generators: Vec<DgGenerator>,
    ctx: Arc<PolyContext>,
    diff: Vec<NcPoly>,
}

/// Validates the grading of each generator's differential and d² = 0 on
/// generators. `diff` is keyed by generator name; absent generators are
/// cycles.
pub fn dg_free(
    ring: Ring,
    generators: Vec<DgGenerator>,
    diff: BTreeMap<String, NcPoly>,
) -> Result<DgAlgebra> {
    if !ring.is_field() {
        return Err(Error::NotAField(ring));
    }
    let names: Vec<&str> = generators.iter().map(|g| g.name.as_str()).collect();
    let ctx = PolyContext::free(ring, Alphabet::new(&names)?);
    if let Some(g) = generators.iter().find(|g| g.weight == 0) {
        return Err(Error::InvalidInput(format!(
            "generator {} has weight 0",
            g.name
        )));
    }
    let mut diffs = vec![NcPoly::zero(&ctx); generators.len()];
    for (name, p) in diff {
        let i = ctx
            .gens
            .index_of(&name)
            .ok_or_else(|| Error::UnknownGenerator(name.clone()))?;
        diffs[i] = p.embed(&ctx)?;
    }
    let mut alg = DgAlgebra {
        generators,
        ctx,
        diff: Vec::new(),
    };
    for (g, p) in alg.generators.iter().zip(&diffs) {
        for (mono, _) in p.terms() {
            if !mono.xpart.is_unit() {
                return Err(Error::ContextMismatch(
                    "differentials must be x-free".into(),
                ));
            }
            let (h, w) = (alg.hdeg(&mono.aword), alg.weight(&mono.aword));
            if g.hdeg == 0 || h + 1 != g.hdeg {
                return Err(Error::DegreeMismatch(format!(
                    "d {} has a term {} of homological degree {h}, expected {}",
                    g.name,
                    crate::freealg::format_word(&mono.aword, &alg.ctx.gens),
                    g.hdeg as i64 - 1
                )));
            }
            if w != g.weight {
                return Err(Error::WeightMismatch(format!(
                    "d {} has weight {w}, expected {}",
                    g.name, g.weight
                )));
            }
        }
    }
    alg.diff = diffs;
    for (g, p) in alg.generators.iter().zip(&alg.diff) {
        let square = alg.differential(p)?;
        if !square.is_zero() {
            return Err(Error::SquareNotZero(format!("d(d {}) = {square}", g.name)));
        }
    }
    Ok(alg)
}

/// [`dg_free`] with differentials written in the polynomial syntax.
pub fn dg_free_from_text(
    ring: Ring,
    generators: Vec<DgGenerator>,
    diff: &[(&str, &str)],
) -> Result<DgAlgebra> {
    let names: Vec<&str> = generators.iter().map(|g| g.name.as_str()).collect();
    let ctx = PolyContext::free(ring, Alphabet::new(&names)?);
    let parsed = diff
        .iter()
        .map(|&(g, text)| Ok((g.to_string(), parse_poly(text, &ctx)?)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    dg_free(ring, generators, parsed)
}

/// `k⟨x, x1 | d x1 = x^d⟩` with x in bidegree (0, 1) and x1 in (1, d).
pub fn derived_clifford_zero(d: u32, ring: Ring) -> Result<DgAlgebra> {
    if d < 2 {
        return Err(Error::Precondition(format!("need d >= 2, got {d}")));
    }
    let generators = vec![DgGenerator::new("x", 0, 1), DgGenerator::new("x1", 1, d)];
    let power = format!("x^{d}");
    dg_free_from_text(ring, generators, &[("x1", &power)])
}

impl DgAlgebra {
    pub fn ring(&self) -> Ring {
        self.ctx.ring
    }

    pub fn context(&self) -> &Arc<PolyContext> {
        &self.ctx
    }

    pub fn generators(&self) -> &[DgGenerator] {
        &self.generators
    }

    pub fn hdeg(&self, w: &Word) -> u32 {
        w.letters()
            .iter()
            .map(|&i| self.generators[i as usize].hdeg)
            .sum()
    }

    pub fn weight(&self, w: &Word) -> u32 {
        w.letters()
            .iter()
            .map(|&i| self.generators[i as usize].weight)
            .sum()
    }

    /// The differential of `d` on generator `i`.
    pub fn generator_differential(&self, i: usize) -> &NcPoly {
        &self.diff[i]
    }

    /// Leibniz extension to a polynomial homogeneous in homological degree.
    pub fn differential(&self, p: &NcPoly) -> Result<NcPoly> {
        let p = p.embed(&self.ctx)?;
        let mut hdegs = p.terms().map(|(m, _)| self.hdeg(&m.aword));
        if let Some(h) = hdegs.next() {
            if hdegs.any(|k| k != h) {
                return Err(Error::NotHomogeneous(
                    "differential needs homogeneous homological degree".into(),
                ));
            }
        }
        let mut out = NcPoly::zero(&self.ctx);
        for (mono, c) in p.terms() {
            let letters = mono.aword.letters();
            let mut prefix_hdeg = 0;
            for (pos, &x) in letters.iter().enumerate() {
                let dx = &self.diff[x as usize];
                if !dx.is_zero() {
                    let left = NcPoly::word(&self.ctx, Word(letters[..pos].to_vec()));
                    let right = NcPoly::word(&self.ctx, Word(letters[pos + 1..].to_vec()));
                    let mut term = left.mul(dx)?.mul(&right)?.scale(c);
                    if prefix_hdeg % 2 == 1 {
                        term = term.neg();
                    }
                    out = out.add(&term)?;
                }
                prefix_hdeg += self.generators[x as usize].hdeg;
            }
        }
        Ok(out)
    }

    /// Words of homological degree `h` and weight `w`, deglex ascending.
    pub fn bigraded_basis(&self, h: u32, w: u32) -> Vec<Word> {
        fn extend(alg: &DgAlgebra, prefix: &mut Vec<u32>, h: u32, w: u32, out: &mut Vec<Word>) {
            if w == 0 {
                if h == 0 {
                    out.push(Word(prefix.clone()));
                }
                return;
            }
            for (i, g) in alg.generators.iter().enumerate() {
                if g.weight <= w && g.hdeg <= h {
                    prefix.push(i as u32);
                    extend(alg, prefix, h - g.hdeg, w - g.weight, out);
                    prefix.pop();
                }
            }
        }
        let mut out = Vec::new();
        extend(self, &mut Vec::new(), h, w, &mut out);
        out.sort();
        out
    }

    /// Rank of d from bidegree (h, w) to (h − 1, w).
    fn differential_rank(&self, h: u32, w: u32) -> Result<usize> {
        if h == 0 {
            return Ok(0);
        }
        let target: HashMap<Word, usize> = self
            .bigraded_basis(h - 1, w)
            .into_iter()
            .enumerate()
            .map(|(i, b)| (b, i))
            .collect();
        let mut rows = Vec::new();
        for b in self.bigraded_basis(h, w) {
            let image = self.differential(&NcPoly::word(&self.ctx, b))?;
            let row: SparseRow = image
                .terms()
                .map(|(m, c)| (target[&m.aword], c.clone()))
                .collect();
            rows.push(row);
        }
        rank(self.ring(), rows)
    }

    /// dim ker(d: (h, w) → (h−1, w)) − rank(d: (h+1, w) → (h, w)).
    pub fn homology_rank(&self, h: u32, w: u32) -> Result<usize> {
        let dim = self.bigraded_basis(h, w).len();
        Ok(dim - self.differential_rank(h, w)? - self.differential_rank(h + 1, w)?)
    }

    /// `(h, w, rank)` for h ≤ hmax (outer) and w ≤ wmax (inner).
    pub fn homology_table(&self, hmax: u32, wmax: u32) -> Result<Vec<(u32, u32, usize)>> {
        let mut out = Vec::new();
        for h in 0..=hmax {
            for w in 0..=wmax {
                out.push((h, w, self.homology_rank(h, w)?));
            }
        }
        Ok(out)
    }
}

/// Free-function form of [`DgAlgebra::differential`].
pub fn dg_differential(alg: &DgAlgebra, p: &NcPoly) -> Result<NcPoly> {
    alg.differential(p)
}

/// Free-function form of [`DgAlgebra::bigraded_basis`].
pub fn bigraded_basis(alg: &DgAlgebra, h: u32, w: u32) -> Vec<Word> {
    alg.bigraded_basis(h, w)
}

/// Free-function form of [`DgAlgebra::homology_rank`].
pub fn homology_rank(alg: &DgAlgebra, h: u32, w: u32) -> Result<usize> {
    alg.homology_rank(h, w)
}
