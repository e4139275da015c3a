//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits nonzero if any failed.

use std::process::ExitCode;

use kahler_cli::fixtures::corpus;
use kahler_core::lie2::{analyze, classify_one_relator, joint_span_dim2, OneRelatorClass};
use kahler_core::magnus::magnus_epsilon;
use kahler_core::obstructions::{
    analyze_presentation, relation_count_bound, Citation, ObstructionReport, VerdictCode,
};
use kahler_core::oracle::{bch_evaluate, oracle_gamma23_dim};
use kahler_core::{binomial2, parse_presentation, Bch2Element, Presentation, Word, Q};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn parse(text: &str) -> Presentation {
    parse_presentation(text).unwrap_or_else(|e| panic!("{text:?}: {e}"))
}

fn fixture(name: &str) -> Presentation {
    let f = corpus()
        .into_iter()
        .find(|f| f.name == name)
        .unwrap_or_else(|| panic!("no fixture {name}"));
    parse(&f.text)
}

fn report(p: &Presentation) -> ObstructionReport {
    analyze_presentation(p).1
}

fn fired(r: &ObstructionReport, c: Citation) -> bool {
    r.verdicts.iter().any(|v| v.citation == c)
}

fn random_word(rng: &mut ChaCha8Rng, n: usize, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    let pairs: Vec<(usize, i64)> = (0..len)
        .map(|_| (rng.gen_range(0..n), if rng.gen_bool(0.5) { 1 } else { -1 }))
        .collect();
    Word::from_pairs(&pairs)
}

/// Relators of at most 12 letters; half of them are commutators so that the
/// degree-two part is exercised.
fn random_relator(rng: &mut ChaCha8Rng, n: usize) -> Word {
    if rng.gen_bool(0.5) {
        let u = random_word(rng, n, 3);
        let v = random_word(rng, n, 3);
        Word::commutator(&u, &v)
    } else {
        random_word(rng, n, 12)
    }
}

fn random_presentation(rng: &mut ChaCha8Rng) -> Presentation {
    let n = rng.gen_range(1..=5);
    let s = rng.gen_range(0..=6);
    let rels = (0..s).map(|_| random_relator(rng, n)).collect();
    Presentation::with_default_names(n, rels).expect("generators in range")
}

fn free_groups() -> Outcome {
    for n in 1..=6 {
        let p = Presentation::with_default_names(n, vec![]).unwrap();
        let r = report(&p);
        let inv = &r.invariants;
        ensure!(inv.q == n, "F{n}: q = {}", inv.q);
        ensure!(inv.dim2 == binomial2(n), "F{n}: dim2 = {}", inv.dim2);
        ensure!(inv.grl_free, "F{n}: grl not free");
        ensure!(
            r.overall == VerdictCode::NotKahler,
            "F{n}: overall {}",
            r.overall
        );
        ensure!(
            fired(&r, Citation::FreeGradedLie),
            "F{n}: free grl test silent"
        );
    }
    Ok("F1..F6".into())
}

fn surface_groups() -> Outcome {
    for g in 1..=4usize {
        let gens: Vec<String> = (1..=g)
            .flat_map(|i| [format!("a{i}"), format!("b{i}")])
            .collect();
        let rel: String = (1..=g).map(|i| format!("(a{i},b{i})")).collect();
        let p = parse(&format!("gens: {}\nrels: {rel}", gens.join(" ")));
        let r = report(&p);
        let inv = &r.invariants;
        ensure!(inv.q == 2 * g, "genus {g}: q = {}", inv.q);
        ensure!(
            inv.dim2 == 2 * g * g - g - 1,
            "genus {g}: dim2 = {}",
            inv.dim2
        );
        ensure!(g != 2 || inv.dim2 == 5, "genus 2: dim2 = {}", inv.dim2);
        ensure!(r.overall != VerdictCode::NotKahler, "genus {g}: NOT_KAHLER");
        ensure!(
            (g >= 2) == fired(&r, Citation::NonfiberedBound),
            "genus {g}: nonfibered bound fired = {}",
            fired(&r, Citation::NonfiberedBound)
        );
    }
    Ok("g = 1..4".into())
}

fn gamma3_relator() -> Outcome {
    let p = parse("gens: x y\nrels: ((x,y),y)");
    let class = classify_one_relator(&p).map_err(|e| e.to_string())?;
    ensure!(
        class == OneRelatorClass::InGamma3,
        "class {}",
        class.as_str()
    );
    let r = report(&p);
    let inv = &r.invariants;
    ensure!(
        inv.grl_free && inv.q == 2 && inv.dim2 == 1,
        "grl not that of F2: {inv:?}"
    );
    ensure!(r.overall == VerdictCode::NotKahler, "overall {}", r.overall);
    ensure!(fired(&r, Citation::FreeGradedLie), "free grl test silent");
    Ok("IN_GAMMA3, grl = grl F2".into())
}

fn independent_relators() -> Outcome {
    for name in ["independent_pair", "independent_triple"] {
        let r = report(&fixture(name));
        let inv = &r.invariants;
        ensure!(
            inv.q == 2 && inv.dim_w == 0,
            "{name}: q = {}, dim W = {}",
            inv.q,
            inv.dim_w
        );
        ensure!(
            r.overall == VerdictCode::NotKahler,
            "{name}: overall {}",
            r.overall
        );
    }
    let r = report(&fixture("independent_pair"));
    ensure!(
        fired(&r, Citation::AlbaneseBound),
        "albanese route silent on the pair"
    );
    Ok("both NOT_KAHLER, albanese route fires".into())
}

fn two_commutators() -> Outcome {
    let r = report(&parse(
        "gens: x1 x2 x3 x4\nrels: (x1 x2,x3^2) | (x1 x3 x1,x4^3)",
    ));
    let inv = &r.invariants;
    ensure!(inv.q == 4 && inv.dim2 == 4 && inv.s == 2, "{inv:?}");
    ensure!(
        fired(&r, Citation::LowRelatorSurface),
        "low relator test silent"
    );
    ensure!(r.overall == VerdictCode::NotKahler, "overall {}", r.overall);
    Ok("dim2 = 4".into())
}

fn chain_links() -> Outcome {
    let r = report(&fixture("chain_link_4"));
    let inv = &r.invariants;
    ensure!(
        inv.q == 4 && inv.dim2 == 2,
        "G4: q = {}, dim2 = {}",
        inv.q,
        inv.dim2
    );
    ensure!(
        fired(&r, Citation::RelationCount),
        "G4: relation count silent"
    );
    ensure!(r.fibered.all_excluded, "G4: fibered not excluded");
    ensure!(
        r.overall == VerdictCode::NotKahler,
        "G4: overall {}",
        r.overall
    );
    let r = report(&fixture("chain_link_6"));
    ensure!(
        r.overall == VerdictCode::NotNonfiberedKahler,
        "G6: overall {}",
        r.overall
    );
    ensure!(
        r.fibered.admissible.contains(&2),
        "G6: genus 2 not admissible"
    );
    Ok("G4 NOT_KAHLER, G6 NOT_NONFIBERED_KAHLER".into())
}

fn mixed_path_link() -> Outcome {
    let r = report(&parse(
        "gens: x1 x2 x3 x4 x5\nrels: x1^2 x2^-2 x4^2 | (x1,x2) | (x2,x3) | (x3,x4) | (x4,x5)",
    ));
    let inv = &r.invariants;
    ensure!(
        inv.k == 1 && inv.q == 4 && inv.dim2 == 2 && inv.s == 5,
        "{inv:?}"
    );
    ensure!(
        relation_count_bound(inv.n, inv.k) == 6,
        "bound {}",
        relation_count_bound(inv.n, inv.k)
    );
    ensure!(
        fired(&r, Citation::CombinedFibration),
        "combined verdict missing"
    );
    ensure!(r.overall == VerdictCode::NotKahler, "overall {}", r.overall);
    Ok("s = 5 < 6, combined NOT_KAHLER".into())
}

fn dimension_identity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let cases = 500;
    for _ in 0..cases {
        let p = random_presentation(&mut rng);
        let a = analyze(&p);
        let (q, dim2) = (a.d0.q(), a.grl.dim2);
        ensure!(
            dim2 + a.d0.dim_kernel() == binomial2(q) + a.d1.dim_ker_d1,
            "identity fails on\n{p}"
        );
        ensure!(joint_span_dim2(&p) == dim2, "joint span disagrees on\n{p}");
    }
    Ok(format!("{cases} presentations"))
}

fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let words = 1000;
    for _ in 0..words {
        let n = rng.gen_range(1..=5);
        let w = random_word(&mut rng, n, 12);
        let m = magnus_epsilon::<Q>(&w, n);
        let b: Bch2Element = bch_evaluate(&w, n);
        let twice: Vec<Q> = b.w.iter().map(|x| x * Q::from_integer(2.into())).collect();
        ensure!(m.linear == b.v, "linear parts differ on {w:?}");
        ensure!(
            m.antisymmetrized_quadratic() == twice,
            "factor 2 fails on {w:?}"
        );
    }
    let fixtures = corpus();
    for f in &fixtures {
        let p = parse(&f.text);
        let dim2 = report(&p).invariants.dim2;
        ensure!(
            oracle_gamma23_dim(&p) == dim2,
            "oracle disagrees on fixture {}",
            f.name
        );
    }
    let presentations = 200;
    for _ in 0..presentations {
        let p = random_presentation(&mut rng);
        let dim2 = report(&p).invariants.dim2;
        ensure!(oracle_gamma23_dim(&p) == dim2, "oracle disagrees on\n{p}");
    }
    Ok(format!(
        "{words} words, {} fixtures, {presentations} presentations",
        fixtures.len()
    ))
}

fn invariance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let cases = 200;
    let key = |p: &Presentation| {
        let r = report(p);
        (r.invariants.q, r.invariants.dim2, r.overall)
    };
    let mut checked = 0;
    let mut dims_changed = [0usize; 4];
    let mut verdict_changed = [0usize; 4];
    let mut example: Option<String> = None;
    while checked < cases {
        let p = random_presentation(&mut rng);
        if p.s() == 0 {
            continue;
        }
        checked += 1;
        let base = key(&p);
        let rels = p.relators().to_vec();
        let i = rng.gen_range(0..rels.len());

        let mut inverted = rels.clone();
        inverted[i] = inverted[i].inverse();
        let mut conjugated = rels.clone();
        let g = random_word(&mut rng, p.n(), 4);
        conjugated[i] = conjugated[i].conjugate_by(&g);
        let mut duplicated = rels.clone();
        duplicated.push(rels[i].clone());
        let mut perm: Vec<usize> = (0..p.n()).collect();
        perm.shuffle(&mut rng);

        let variants = [
            p.with_relators(inverted).unwrap(),
            p.with_relators(conjugated).unwrap(),
            p.with_relators(duplicated).unwrap(),
            p.permute_generators(&perm).unwrap(),
        ];
        for (k, v) in variants.iter().enumerate() {
            let got = key(v);
            if (got.0, got.1) != (base.0, base.1) {
                dims_changed[k] += 1;
            } else if got.2 != base.2 {
                verdict_changed[k] += 1;
                example.get_or_insert_with(|| format!("{base:?} -> {got:?} on\n{p}"));
            }
        }
    }
    let names = ["inversion", "conjugation", "duplicate", "permutation"];
    let tally: Vec<String> = names
        .iter()
        .zip(dims_changed.iter().zip(&verdict_changed))
        .map(|(n, (d, v))| format!("{n} {d}/{v}"))
        .collect();
    let summary = format!(
        "{cases} cases, changed (q, dim2)/verdict: {}",
        tally.join(", ")
    );
    match example {
        None if dims_changed == [0; 4] => Ok(summary),
        None => Err(summary),
        Some(e) => Err(format!("{summary}; first verdict change {e}")),
    }
}

fn kahler_controls() -> Outcome {
    let mut texts = vec!["gens:".to_string()];
    for m in 1..=6 {
        texts.push(format!("gens: x\nrels: x^{m}"));
    }
    for g in 1..=3usize {
        let gens: Vec<String> = (1..=2 * g).map(|i| format!("x{i}")).collect();
        let rels: Vec<String> = (1..=2 * g)
            .flat_map(|i| ((i + 1)..=2 * g).map(move |j| format!("(x{i},x{j})")))
            .collect();
        texts.push(format!(
            "gens: {}\nrels: {}",
            gens.join(" "),
            rels.join(" | ")
        ));
    }
    for g in 1..=4usize {
        let gens: Vec<String> = (1..=g)
            .flat_map(|i| [format!("a{i}"), format!("b{i}")])
            .collect();
        let rel: String = (1..=g).map(|i| format!("(a{i},b{i})")).collect();
        texts.push(format!("gens: {}\nrels: {rel}", gens.join(" ")));
    }
    for t in &texts {
        let r = report(&parse(t));
        let bad: Vec<&str> = r
            .verdicts
            .iter()
            .filter(|v| v.code == VerdictCode::NotKahler)
            .map(|v| v.citation.label())
            .collect();
        ensure!(bad.is_empty(), "NOT_KAHLER ({}) on {t:?}", bad.join(", "));
    }
    Ok(format!("{} presentations", texts.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("free groups", free_groups),
        ("surface groups", surface_groups),
        ("relator in Gamma_3", gamma3_relator),
        ("independent relators", independent_relators),
        ("two commutator relators", two_commutators),
        ("chain links", chain_links),
        ("mixed path link", mixed_path_link),
        ("dimension identity", dimension_identity),
        ("oracle equivalence", oracle_equivalence),
        ("invariance", invariance),
        ("Kähler controls", kahler_controls),
    ];
    let mut failures = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(note) => println!("criterion {:>2} PASS  {name}: {note}", k + 1),
            Err(why) => {
                failures += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", k + 1);
            }
        }
    }
    println!("{} passed, {failures} failed", criteria.len() - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
