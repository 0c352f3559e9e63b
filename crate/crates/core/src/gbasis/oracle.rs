use std::collections::HashMap;

use super::{lin_add_sandwich, to_lin, Lin};
use crate::coeffs::{Ring, RingKind};
use crate::error::{Error, Result};
use crate::freealg::{NcPoly, PolyContext, Word};
use crate::linalg::{Echelon, SparseRow};

/// Word-space cap used by [`span_membership_oracle`].
pub const DEFAULT_WORD_CAP: usize = 200_000;

/// All words of length at most `max_len`, deglex ascending.
fn words_up_to(letters: u32, max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut layer = vec![Vec::<u32>::new()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * letters as usize);
        for w in &layer {
            for x in 0..letters {
                let mut v = w.clone();
                v.push(x);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned().map(Word));
        layer = next;
    }
    out
}

/// Whether `p` is a combination of `u·g·v` with `g` among `relations` and
/// every such product of degree at most `max_degree`. Decided by exact
/// linear algebra on the words of degree at most `max_degree`.
pub fn span_membership_oracle(p: &NcPoly, relations: &[NcPoly], max_degree: usize) -> Result<bool> {
    span_membership_oracle_capped(p, relations, max_degree, DEFAULT_WORD_CAP)
}

pub fn span_membership_oracle_capped(
    p: &NcPoly,
    relations: &[NcPoly],
    max_degree: usize,
    cap: usize,
) -> Result<bool> {
    let source = p.context();
    let ring = match source.ring.kind() {
        RingKind::Integers => Ring::rationals(),
        _ => source.ring,
    };
    let ctx = PolyContext::free(ring, source.gens.clone());
    let letters = ctx.gens.len() as u128;
    let mut dimension: u128 = 0;
    let mut layer: u128 = 1;
    for _ in 0..=max_degree {
        dimension = dimension.saturating_add(layer);
        layer = layer.saturating_mul(letters);
    }
    if dimension > cap as u128 {
        return Err(Error::TooLarge { dimension, cap });
    }
    let words = words_up_to(ctx.gens.len() as u32, max_degree);
    let index: HashMap<&Word, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let to_row =
        |lin: &Lin| -> SparseRow { lin.iter().map(|(w, c)| (index[w], c.clone())).collect() };

    let target = to_lin(p, &ctx)?;
    if target.keys().any(|w| w.len() > max_degree) {
        return Ok(false);
    }
    let mut span = Echelon::new(ring)?;
    let one = ring.one();
    for g in relations {
        let g = to_lin(g, &ctx)?;
        let Some(deg) = g.keys().map(Word::len).max() else {
            continue;
        };
        if deg > max_degree {
            continue;
        }
        let room = max_degree - deg;
        for u in words.iter().take_while(|u| u.len() <= room) {
            for v in words.iter().take_while(|v| u.len() + v.len() <= room) {
                let mut row = Lin::new();
                lin_add_sandwich(&mut row, &one, u.letters(), &g, v.letters());
                span.insert(to_row(&row));
            }
        }
    }
    Ok(span.contains(to_row(&target)))
}
