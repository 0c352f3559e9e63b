//! Acceptance suite: one pass/fail line per criterion, then a single
//! assertion that every criterion passed.

use std::collections::BTreeMap;
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use gencliff_core::clifford::{
    hypersurface_equation, is_weighted_homogeneous, kl_presentation, psi_point_relations,
    psi_presentation, quadratic_presentation, weyl_presentation, CliffordInput, Presentation,
    QuadraticForm,
};
use gencliff_core::coeffs::Ring;
use gencliff_core::dg::{derived_clifford_zero, DgAlgebra};
use gencliff_core::freealg::{format_poly, parse_poly, Alphabet, NcPoly, PolyContext, Word, XMode};
use gencliff_core::gbasis::{
    buchberger_bounded, span_membership_oracle, GBState, MembershipVerdict,
};
use gencliff_core::laws::{law_from_commutative_poly, law_generic};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;

/// Identifier, name, check and time limit in seconds.
type Criterion = (u32, &'static str, fn() -> Outcome, u64);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn gf(p: u64) -> Ring {
    Ring::prime_field(p).unwrap()
}

fn alphabet(names: &[&str]) -> Alphabet {
    Alphabet::new(names).unwrap()
}

fn f2_example(ring: Ring, mode: XMode) -> CliffordInput {
    CliffordInput::from_texts(
        ring,
        alphabet(&["x", "y"]),
        1,
        2,
        &[(1, "y"), (2, "0")],
        mode,
    )
    .unwrap()
}

fn relation_texts(p: &Presentation) -> Vec<String> {
    p.relations().iter().map(format_poly).collect()
}

fn complete(p: &Presentation, bound: usize) -> Result<GBState, String> {
    ok(buchberger_bounded(&p.context(), p.relations(), bound))
}

/// The first relation of `b` outside the ideal completed in `a`, with its verdict.
fn first_missing(a: &GBState, b: &[NcPoly]) -> Result<Option<String>, String> {
    for r in b {
        let r = ok(r.embed(a.context()))?;
        let verdict = ok(a.is_member(&r))?;
        if verdict != MembershipVerdict::Member {
            return Ok(Some(format!("{r}: {verdict}")));
        }
    }
    Ok(None)
}

fn contains_all(a: &GBState, b: &[NcPoly]) -> Result<bool, String> {
    Ok(first_missing(a, b)?.is_none())
}

fn criterion_1() -> Outcome {
    let p = ok(kl_presentation(&f2_example(gf(2), XMode::Ordered)))?;
    let mut got = relation_texts(&p);
    got.sort();
    let want = ["a*b + a", "a^2", "b*a", "b^2 + b"];
    ensure!(got == want, "library relations {got:?}");
    let dir = std::path::PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let file = dir.join("acceptance_f2.gca");
    std::fs::write(
        &file,
        "ring = GF(2)\nvars = x, y\nm = 1\nd = 2\nf[1] = y\nf[2] = 0\nmode = ordered\n",
    )
    .unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_gencliff"))
        .args(["kl", "--input", file.to_str().unwrap()])
        .output()
        .unwrap();
    let stdout = String::from_utf8_lossy(&out.stdout);
    let mut cli: Vec<&str> = stdout
        .lines()
        .filter_map(|l| l.strip_prefix("rel: "))
        .collect();
    cli.sort();
    ensure!(out.status.success() && cli == want, "cli relations {cli:?}");
    Ok(format!("{} relations", got.len()))
}

fn criterion_2() -> Outcome {
    let psi = ok(psi_presentation(&f2_example(gf(2), XMode::Ordered)))?;
    let ctx = psi.context();
    let printed: Vec<NcPoly> = ["a^2", "a^2 + b^2 + a*b + b*a - a - b", "b^2 - b"]
        .iter()
        .map(|t| parse_poly(t, &ctx).unwrap())
        .collect();
    let g_psi = complete(&psi, 6)?;
    let g_printed = ok(buchberger_bounded(&ctx, &printed, 6))?;
    ensure!(
        contains_all(&g_psi, &printed)?,
        "printed generators not in the psi ideal"
    );
    ensure!(
        contains_all(&g_printed, psi.relations())?,
        "psi relations not in the printed ideal"
    );
    Ok("mutual membership at bound 6".into())
}

fn criterion_3() -> Outcome {
    let data = f2_example(gf(2), XMode::Ordered);
    let kl = ok(kl_presentation(&data))?;
    let psi = ok(psi_presentation(&data))?;
    let probe = parse_poly("a*b + a", &kl.context()).unwrap();
    let in_kl = ok(complete(&kl, 6)?.is_member(&probe))?;
    ensure!(in_kl == MembershipVerdict::Member, "kl verdict {in_kl}");
    let in_psi = ok(complete(&psi, 6)?.is_member(&probe))?;
    match in_psi {
        MembershipVerdict::CertifiedNonMember => {}
        MembershipVerdict::NotDetectedUpTo(6) => {
            for d in 2..=6 {
                ensure!(
                    !ok(span_membership_oracle(&probe, psi.relations(), d))?,
                    "oracle finds a witness at degree {d}"
                );
            }
        }
        other => return Err(format!("psi verdict {other}")),
    }
    Ok(format!("kl: {in_kl}, psi: {in_psi}"))
}

fn criterion_4() -> Outcome {
    let q = Ring::rationals();
    let diagonals: [&[i64]; 5] = [&[1], &[-3], &[1, 1], &[2, -5], &[1, 2, 3]];
    for diag in diagonals {
        let n = diag.len();
        let form = ok(QuadraticForm::new(
            diag.iter().map(|&c| q.from_i64(c)).collect(),
            BTreeMap::new(),
        ))?;
        let p = ok(quadratic_presentation(&form))?;
        let g = complete(&p, 6)?;
        ensure!(g.is_complete(), "incomplete basis for {diag:?}");
        let counts = ok(g.quotient_dimension(n + 2))?;
        ensure!(
            counts.total() == 1 << n,
            "total {} for {diag:?}",
            counts.total()
        );
        // the normal words are exactly the increasing products of generators
        for subset in 0u32..1 << n {
            let word = Word((0..n as u32).filter(|i| subset >> i & 1 == 1).collect());
            let w = NcPoly::word(&p.context(), word);
            ensure!(ok(g.normal_form(&w))? == w, "{w} is not a normal word");
        }
    }
    Ok("totals 2, 4, 8".into())
}

fn criterion_5() -> Outcome {
    let q = Ring::rationals();
    let psi = vec![vec![q.zero(), q.one()], vec![q.from_i64(-1), q.zero()]];
    let p = ok(weyl_presentation(q, &psi))?;
    let counts = ok(complete(&p, 8)?.quotient_dimension(8))?;
    let cumulative = counts.cumulative();
    for (d, c) in cumulative.iter().enumerate() {
        let want = ((d + 1) * (d + 2) / 2) as u128;
        ensure!(
            *c == want,
            "cumulative count {c} at D = {d}, expected {want}"
        );
    }
    Ok(format!("cumulative {cumulative:?}"))
}

fn criterion_6() -> Outcome {
    for ring in [Ring::rationals(), gf(5)] {
        for d in 2..=4u32 {
            let alg = ok(derived_clifford_zero(d, ring))?;
            ensure!(
                ok(alg.homology_rank(1, d + 1))? == 1,
                "H(1, {}) over {ring}",
                d + 1
            );
            let data = ok(CliffordInput::new(
                ring,
                alphabet(&["x"]),
                1,
                d,
                BTreeMap::new(),
                XMode::Ordered,
            ))?;
            let classical = ok(complete(&ok(psi_presentation(&data))?, 8)?.quotient_dimension(8))?;
            for w in 0..=8u32 {
                let h0 = ok(alg.homology_rank(0, w))?;
                ensure!(
                    h0 == usize::from(w < d),
                    "H(0, {w}) = {h0} for d = {d} over {ring}"
                );
                ensure!(
                    h0 as u128 == classical.per_degree[w as usize],
                    "quotient dimension differs at weight {w}, d = {d}"
                );
            }
        }
    }
    Ok("d = 2, 3, 4 over QQ and GF(5)".into())
}

fn random_form(ctx: &Arc<PolyContext>, degree: u32, rng: &mut StdRng) -> NcPoly {
    let n = ctx.vars.len();
    let mut f = NcPoly::zero(ctx);
    for _ in 0..rng.gen_range(0..=3) {
        let mut exps = vec![0u32; n];
        for _ in 0..degree {
            exps[rng.gen_range(0..n)] += 1;
        }
        let c = ctx.ring.from_i64(rng.gen_range(-4..5));
        f = f.add(&NcPoly::x_monomial(ctx, &exps).scale(&c)).unwrap();
    }
    f
}

fn criterion_7() -> Outcome {
    let q = Ring::rationals();
    let eq = ok(hypersurface_equation(&f2_example(q, XMode::Ordered)))?;
    ensure!(format_poly(&eq) == "x0^2 - x0*y", "linear case gave {eq}");
    let qform = "x^2 - 3*x*y + 7*y^2";
    let data = ok(CliffordInput::from_texts(
        q,
        alphabet(&["x", "y"]),
        1,
        2,
        &[(2, qform)],
        XMode::Ordered,
    ))?;
    let eq = ok(hypersurface_equation(&data))?;
    let want = parse_poly(&format!("x0^2 - ({qform})"), eq.context()).unwrap();
    ensure!(eq == want, "quadratic case gave {eq}");
    let mut rng = StdRng::seed_from_u64(7);
    let names = ["x", "y", "z"];
    for _ in 0..100 {
        let ring = [q, gf(2), gf(3), gf(5)][rng.gen_range(0..4)];
        let n = rng.gen_range(1..=3);
        let (m, d) = (rng.gen_range(1..=3u32), rng.gen_range(1..=3u32));
        let vars = alphabet(&names[..n]);
        let ctx = PolyContext::commutative(ring, vars.clone());
        let forms = (1..=d)
            .map(|l| (l, random_form(&ctx, l * m, &mut rng)))
            .collect();
        let data = ok(CliffordInput::new(ring, vars, m, d, forms, XMode::Ordered))?;
        let eq = ok(hypersurface_equation(&data))?;
        let mut weights = vec![m];
        weights.extend(std::iter::repeat_n(1, n));
        ensure!(
            is_weighted_homogeneous(&eq, &weights, m * d),
            "{eq} is not homogeneous of weight {}",
            m * d
        );
    }
    Ok("both equations exact, 100 random inputs homogeneous".into())
}

fn criterion_8() -> Outcome {
    let mut rng = StdRng::seed_from_u64(8);
    let names = ["x", "y"];
    let (mut checked, mut failures) = (0, Vec::new());
    for p in [2u64, 3] {
        let ring = gf(p);
        for n in 1..=2usize {
            for m in 1..=2u32 {
                for d in 1..=3u32 {
                    let vars = alphabet(&names[..n]);
                    let ctx = PolyContext::commutative(ring, vars.clone());
                    for trial in 0..2 {
                        let forms: BTreeMap<u32, NcPoly> = if trial == 0 {
                            BTreeMap::new()
                        } else {
                            (1..=d)
                                .map(|l| (l, random_form(&ctx, l * m, &mut rng)))
                                .collect()
                        };
                        let data = ok(CliffordInput::new(
                            ring,
                            vars.clone(),
                            m,
                            d,
                            forms,
                            XMode::Ordered,
                        ))?;
                        let basis = ok(psi_presentation(&data))?;
                        let points = ok(psi_point_relations(&data))?;
                        let g_basis = complete(&basis, 6)?;
                        let g_points = complete(&points, 6)?;
                        checked += 1;
                        // point relations always lie in the basis ideal; the converse is what can fail
                        if let Some(extra) = first_missing(&g_basis, points.relations())? {
                            failures.push(format!(
                                "GF({p}) n={n} m={m} d={d} trial={trial}: point relation {extra}"
                            ));
                        } else if let Some(missing) = first_missing(&g_points, basis.relations())? {
                            failures.push(format!(
                                "GF({p}) n={n} m={m} d={d} trial={trial}: {missing}"
                            ));
                        }
                    }
                }
            }
        }
    }
    ensure!(
        failures.is_empty(),
        "{} of {checked} configurations differ; {}",
        failures.len(),
        failures.join("; ")
    );
    Ok(format!("{checked} configurations agree"))
}

fn random_poly(ctx: &Arc<PolyContext>, rng: &mut StdRng, terms: usize, max_len: usize) -> NcPoly {
    let n = ctx.gens.len() as u32;
    let mut p = NcPoly::zero(ctx);
    for _ in 0..terms {
        let w = Word(
            (0..rng.gen_range(0..=max_len))
                .map(|_| rng.gen_range(0..n))
                .collect(),
        );
        let c = ctx.ring.from_i64(rng.gen_range(-3..4));
        p = p.add(&NcPoly::word(ctx, w).scale(&c)).unwrap();
    }
    p
}

fn random_mixed(ctx: &Arc<PolyContext>, rng: &mut StdRng) -> NcPoly {
    let mut p = NcPoly::zero(ctx);
    for _ in 0..rng.gen_range(0..=4) {
        let w = Word(
            (0..rng.gen_range(0..=3))
                .map(|_| rng.gen_range(0..ctx.gens.len() as u32))
                .collect(),
        );
        let exps: Vec<u32> = (0..ctx.vars.len()).map(|_| rng.gen_range(0..=2)).collect();
        let num = rng.gen_range(-5..6);
        let c = if ctx.ring == Ring::rationals() {
            ctx.ring
                .from_i64(num)
                .mul(&ctx.ring.from_i64(rng.gen_range(1..4)).inv().unwrap())
        } else {
            ctx.ring.from_i64(num)
        };
        let term = NcPoly::word(ctx, w)
            .mul(&NcPoly::x_monomial(ctx, &exps))
            .unwrap()
            .scale(&c);
        p = p.add(&term).unwrap();
    }
    p
}

fn random_dg_element(alg: &DgAlgebra, rng: &mut StdRng) -> NcPoly {
    loop {
        let basis = alg.bigraded_basis(rng.gen_range(0..=2), rng.gen_range(0..=6));
        if basis.is_empty() {
            continue;
        }
        let mut p = NcPoly::zero(alg.context());
        for _ in 0..rng.gen_range(1..=3) {
            let b = basis[rng.gen_range(0..basis.len())].clone();
            let c = alg.ring().from_i64(rng.gen_range(-3..4));
            p = p.add(&NcPoly::word(alg.context(), b).scale(&c)).unwrap();
        }
        return p;
    }
}

fn criterion_9() -> Outcome {
    let mut rng = StdRng::seed_from_u64(9);
    let rings = [gf(2), gf(3), Ring::rationals()];
    let mut cases = 0usize;

    // Gröbner engine against the span oracle
    for _ in 0..150 {
        let ring = rings[rng.gen_range(0..3)];
        let ctx = PolyContext::free(ring, alphabet(&["a", "b"]));
        let rels: Vec<NcPoly> = (0..rng.gen_range(1..=3))
            .map(|_| random_poly(&ctx, &mut rng, 3, 3))
            .collect();
        let bound = 5;
        let g = ok(buchberger_bounded(&ctx, &rels, bound))?;
        for _ in 0..4 {
            let p = random_poly(&ctx, &mut rng, 3, 4);
            let (nf, trace) = ok(g.normal_form_traced(&p))?;
            if ok(span_membership_oracle(&p, &rels, bound))? {
                ensure!(nf.is_zero(), "oracle member {p} has normal form {nf}");
            }
            let witness = trace.max(p.degree());
            if nf.is_zero() && witness <= 8 {
                ensure!(
                    ok(span_membership_oracle(&p, &rels, witness))?,
                    "{p} lacks a witness at {witness}"
                );
            }
            ensure!(
                ok(g.normal_form(&nf))? == nf,
                "normal form of {p} is not reduced"
            );
            cases += 1;
        }
    }

    // laws and their generic polynomials
    let names = ["x", "y", "z"];
    for _ in 0..500 {
        let ring = rings[rng.gen_range(0..3)];
        let n = rng.gen_range(1..=3);
        let ctx = PolyContext::commutative(ring, alphabet(&names[..n]));
        let degree = rng.gen_range(0..=4);
        let f = random_form(&ctx, degree, &mut rng);
        let law = ok(law_from_commutative_poly(&f, degree))?;
        let back = ok(law_generic(&law, &ctx.vars))?;
        ensure!(
            format_poly(&back) == format_poly(&f),
            "law roundtrip {f} -> {back}"
        );
        cases += 1;
    }

    // Leibniz rule and d² = 0
    let algs = [
        ok(derived_clifford_zero(2, Ring::rationals()))?,
        ok(derived_clifford_zero(3, gf(5)))?,
    ];
    for i in 0..600 {
        let alg = &algs[i % 2];
        let u = random_dg_element(alg, &mut rng);
        let v = random_dg_element(alg, &mut rng);
        let du = ok(alg.differential(&u))?;
        ensure!(ok(alg.differential(&du))?.is_zero(), "d² {u} is nonzero");
        let mut second = ok(u.mul(&ok(alg.differential(&v))?))?;
        if u.terms()
            .next()
            .is_some_and(|(m, _)| alg.hdeg(&m.aword) % 2 == 1)
        {
            second = second.neg();
        }
        let lhs = ok(alg.differential(&ok(u.mul(&v))?))?;
        ensure!(
            lhs == ok(ok(du.mul(&v))?.add(&second))?,
            "Leibniz fails on {u}, {v}"
        );
        cases += 1;
    }

    // printing then parsing is the identity
    for _ in 0..800 {
        let ring = rings[rng.gen_range(0..3)];
        let mode = if rng.gen_bool(0.5) {
            XMode::Ordered
        } else {
            XMode::Commuting
        };
        let ctx = ok(PolyContext::new(
            ring,
            mode,
            alphabet(&["a", "b", "a_1_0"]),
            alphabet(&["x", "y"]),
        ))?;
        let p = random_mixed(&ctx, &mut rng);
        let text = format_poly(&p);
        let back = ok(parse_poly(&text, &ctx))?;
        ensure!(back == p, "{text} parsed as {back}");
        cases += 1;
    }

    ensure!(cases >= 2000, "only {cases} cases");
    Ok(format!("{cases} randomized cases"))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 9] = [
        (1, "KL relations over F2", criterion_1, 1),
        (2, "psi ideal equals the printed generators", criterion_2, 1),
        (3, "kernel element detected", criterion_3, 2),
        (4, "quadratic Clifford rank 2^n", criterion_4, 5),
        (5, "Weyl normal-word counts", criterion_5, 2),
        (6, "derived Clifford homology", criterion_6, 5),
        (7, "hypersurface equation", criterion_7, 1),
        (
            8,
            "point relations generate the basis ideal",
            criterion_8,
            30,
        ),
        (9, "engine soundness suite", criterion_9, 60),
    ];
    let mut failed = Vec::new();
    for (id, name, run, limit) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > Duration::from_secs(limit) => {
                Err(format!("{detail}, but exceeded {limit} s"))
            }
            other => other,
        };
        match &outcome {
            Ok(detail) => println!("criterion {id} PASS {name} ({elapsed:.2?}): {detail}"),
            Err(why) => {
                println!("criterion {id} FAIL {name} ({elapsed:.2?}): {why}");
                failed.push(id);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
