use super::{Alphabet, MixedMonomial, NcPoly, Word, XPart};

fn push_runs(out: &mut Vec<String>, letters: &[u32], names: &Alphabet) {
    let mut i = 0;
    while i < letters.len() {
        let mut j = i;
        while j < letters.len() && letters[j] == letters[i] {
            j += 1;
        }
        let name = names.name(letters[i] as usize);
        if j - i == 1 {
            out.push(name.to_string());
        } else {
            out.push(format!("{name}^{}", j - i));
        }
        i = j;
    }
}

/// `a^2*b`, or `1` for the empty word.
pub fn format_word(w: &Word, gens: &Alphabet) -> String {
    let mut parts = Vec::new();
    push_runs(&mut parts, w.letters(), gens);
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

fn monomial_factors(m: &MixedMonomial, gens: &Alphabet, vars: &Alphabet) -> Vec<String> {
    let mut parts = Vec::new();
    push_runs(&mut parts, m.aword.letters(), gens);
    match &m.xpart {
        XPart::Ordered(w) => push_runs(&mut parts, w, vars),
        XPart::Exponents(e) => {
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => parts.push(vars.name(i).to_string()),
                    _ => parts.push(format!("{}^{k}", vars.name(i))),
                }
            }
        }
    }
    parts
}

/// Canonical text: terms in descending monomial order, `*` between factors,
/// signs folded into ` + ` / ` - `.
pub fn format_poly(p: &NcPoly) -> String {
    let ctx = p.context();
    let terms = p.sorted_terms();
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, (m, c)) in terms.into_iter().enumerate() {
        let negative = c.is_negative();
        if idx == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let abs = c.abs();
        let mut factors = monomial_factors(m, &ctx.gens, &ctx.vars);
        if !abs.is_one() || factors.is_empty() {
            factors.insert(0, abs.to_string());
        }
        out.push_str(&factors.join("*"));
    }
    out
}
