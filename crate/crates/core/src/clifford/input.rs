//! Line-oriented `key = value` input files and presentation files.

use std::collections::BTreeMap;

use super::{CliffordInput, Presentation, QuadraticForm};
use crate::coeffs::{Ring, Scalar};
use crate::error::{Error, Result};
use crate::freealg::{parse_poly, Alphabet, NcPoly, PolyContext, XMode};

#[derive(Debug, Clone, PartialEq, Eq)]
struct Value {
    text: String,
    line: usize,
    column: usize,
}

impl Value {
    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            column: self.column,
            message: message.into(),
        }
    }

    /// Re-anchors parse errors inside the value to file coordinates.
    fn relocate(&self, e: Error) -> Error {
        match e {
            Error::Parse {
                line,
                column,
                message,
            } => Error::Parse {
                line: self.line + line - 1,
                column: if line == 1 {
                    self.column + column - 1
                } else {
                    column
                },
                message,
            },
            other => other,
        }
    }

    fn parse_poly(&self, ctx: &std::sync::Arc<PolyContext>) -> Result<NcPoly> {
        parse_poly(&self.text, ctx).map_err(|e| self.relocate(e))
    }

    fn parse_u32(&self, key: &str) -> Result<u32> {
        self.text
            .parse()
            .map_err(|_| self.error(format!("`{key}` must be a nonnegative integer")))
    }

    fn parse_scalar(&self, ring: Ring) -> Result<Scalar> {
        let ctx = PolyContext::free(ring, Alphabet::empty());
        let p = self.parse_poly(&ctx)?;
        Ok(p.coefficient(&ctx.unit_monomial()))
    }
}

/// A parsed input file. Clifford data uses `ring`, `vars`, `m`, `d`,
/// `mode` and `f[l]`; a quadratic form may be given as `q`; Weyl data uses
/// `ring`, `n` and `psi[i,j]` (1-based).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputFile {
    ring: Ring,
    scalars: BTreeMap<String, Value>,
    forms: BTreeMap<u32, Value>,
    psi: BTreeMap<(usize, usize), Value>,
}

fn indices(key: &str, prefix: &str) -> Option<Vec<usize>> {
    let inner = key
        .strip_prefix(prefix)?
        .strip_prefix('[')?
        .strip_suffix(']')?;
    inner.split(',').map(|s| s.trim().parse().ok()).collect()
}

impl InputFile {
    pub fn parse(text: &str) -> Result<InputFile> {
        let mut scalars = BTreeMap::new();
        let mut forms = BTreeMap::new();
        let mut psi = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("");
            if content.trim().is_empty() {
                continue;
            }
            let Some(eq) = content.find('=') else {
                return Err(Error::Parse {
                    line,
                    column: 1,
                    message: "expected `key = value`".into(),
                });
            };
            let key: String = content[..eq]
                .chars()
                .filter(|c| !c.is_whitespace())
                .collect();
            let rest = &content[eq + 1..];
            let lead = rest.len() - rest.trim_start().len();
            let value = Value {
                text: rest.trim().to_string(),
                line,
                column: eq + 2 + lead,
            };
            let duplicate = || Error::Parse {
                line,
                column: 1,
                message: format!("duplicate key `{key}`"),
            };
            if value.text.is_empty() {
                return Err(value.error(format!("empty value for `{key}`")));
            }
            match key.as_str() {
                "ring" | "vars" | "m" | "d" | "mode" | "q" | "n" => {
                    if scalars.insert(key.clone(), value).is_some() {
                        return Err(duplicate());
                    }
                }
                _ => {
                    if let Some(ix) = indices(&key, "f") {
                        let [l] = ix.as_slice() else {
                            return Err(value.error(format!("bad key `{key}`")));
                        };
                        if forms.insert(*l as u32, value).is_some() {
                            return Err(duplicate());
                        }
                    } else if let Some(ix) = indices(&key, "psi") {
                        let [a, b] = ix.as_slice() else {
                            return Err(value.error(format!("bad key `{key}`")));
                        };
                        if psi.insert((*a, *b), value).is_some() {
                            return Err(duplicate());
                        }
                    } else {
                        return Err(Error::Parse {
                            line,
                            column: 1,
                            message: format!("unknown key `{key}`"),
                        });
                    }
                }
            }
        }
        let ring = match scalars.get("ring") {
            Some(v) => v.text.parse::<Ring>()?,
            None => return Err(Error::InvalidInput("missing `ring`".into())),
        };
        Ok(InputFile {
            ring,
            scalars,
            forms,
            psi,
        })
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    /// Whether the file describes a Weyl-type bilinear form.
    pub fn is_weyl(&self) -> bool {
        self.scalars.contains_key("n") || !self.psi.is_empty()
    }

    fn required(&self, key: &str) -> Result<&Value> {
        self.scalars
            .get(key)
            .ok_or_else(|| Error::InvalidInput(format!("missing `{key}`")))
    }

    fn vars(&self) -> Result<Alphabet> {
        let v = self.required("vars")?;
        let names: Vec<&str> = v.text.split(',').map(str::trim).collect();
        Alphabet::new(&names)
    }

    pub fn mode(&self) -> Result<XMode> {
        match self.scalars.get("mode") {
            Some(v) => v.text.parse(),
            None => Ok(XMode::default()),
        }
    }

    /// The forms data; `mode` overrides the file's mode when given.
    pub fn clifford_input(&self, mode: Option<XMode>) -> Result<CliffordInput> {
        let vars = self.vars()?;
        let m = self.required("m")?.parse_u32("m")?;
        let d = self.required("d")?.parse_u32("d")?;
        let mode = match mode {
            Some(mode) => mode,
            None => self.mode()?,
        };
        let ctx = PolyContext::commutative(self.ring, vars.clone());
        let mut forms = BTreeMap::new();
        for (&l, v) in &self.forms {
            forms.insert(l, v.parse_poly(&ctx)?);
        }
        if let Some(q) = self.scalars.get("q") {
            if forms.contains_key(&2) {
                return Err(q.error("both `q` and `f[2]` given"));
            }
            forms.insert(2, q.parse_poly(&ctx)?);
        }
        CliffordInput::new(self.ring, vars, m, d, forms, mode)
    }

    /// The quadratic form from `q`, or from `f[2]` of a file with m = 1,
    /// d = 2 and no linear form.
    pub fn quadratic_form(&self) -> Result<QuadraticForm> {
        let vars = self.vars()?;
        let ctx = PolyContext::commutative(self.ring, vars);
        if let Some(q) = self.scalars.get("q") {
            return QuadraticForm::from_poly(&q.parse_poly(&ctx)?);
        }
        let input = self.clifford_input(Some(XMode::Commuting))?;
        if input.m() != 1 || input.d() != 2 || !input.form(1).is_zero() {
            return Err(Error::InvalidInput(
                "a quadratic form needs `q`, or m = 1, d = 2 and f[1] = 0".into(),
            ));
        }
        QuadraticForm::from_poly(input.form(2))
    }

    /// The n×n matrix of `psi[i,j]` values (absent entries are zero).
    pub fn weyl_matrix(&self) -> Result<Vec<Vec<Scalar>>> {
        let n = self.required("n")?.parse_u32("n")? as usize;
        if n == 0 {
            return Err(Error::InvalidInput("`n` must be positive".into()));
        }
        let mut out = vec![vec![self.ring.zero(); n]; n];
        for (&(i, j), v) in &self.psi {
            if i == 0 || j == 0 || i > n || j > n {
                return Err(v.error(format!("psi[{i},{j}] outside 1..={n}")));
            }
            let c = v.parse_scalar(self.ring)?;
            out[i - 1][j - 1] = c;
        }
        Ok(out)
    }
}

/// Reads the output of [`Presentation::to_text`].
pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let mut ring = None;
    let mut gens = None;
    let mut rels: Vec<(usize, usize, String)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let trimmed = content.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(rel) = trimmed.strip_prefix("rel:") {
            let column =
                content.find("rel:").unwrap_or(0) + 5 + (rel.len() - rel.trim_start().len());
            rels.push((line, column, rel.trim().to_string()));
            continue;
        }
        let Some((key, value)) = trimmed.split_once('=') else {
            return Err(Error::Parse {
                line,
                column: 1,
                message: "expected `key = value` or `rel: <poly>`".into(),
            });
        };
        match key.trim() {
            "ring" => ring = Some(value.trim().parse::<Ring>()?),
            "generators" => {
                let names: Vec<&str> = value
                    .split(',')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .collect();
                gens = Some(Alphabet::new(&names)?);
            }
            other => {
                return Err(Error::Parse {
                    line,
                    column: 1,
                    message: format!("unknown key `{other}`"),
                })
            }
        }
    }
    let ring = ring.ok_or_else(|| Error::InvalidInput("missing `ring`".into()))?;
    let gens = gens.ok_or_else(|| Error::InvalidInput("missing `generators`".into()))?;
    let ctx = PolyContext::free(ring, gens.clone());
    let mut polys = Vec::with_capacity(rels.len());
    for (line, column, text) in rels {
        let v = Value { text, line, column };
        polys.push(v.parse_poly(&ctx)?);
    }
    Presentation::new(ring, gens, polys, None)
}
