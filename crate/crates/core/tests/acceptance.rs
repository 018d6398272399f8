//! Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
//!
//! Every comparison is exact except the per-check time limit.

mod common;

use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use common::oracle::truncated_codim;
use common::properties::*;
use common::*;
use leviscope::blowup::{strict_transform, strict_transform_form, BlowupChart};
use leviscope::expr::{format_poly_file, parse_in, parse_poly_file, print_poly};
use leviscope::forms::{alpha_beta, DiffForm};
use leviscope::hermitian::{complexify, diagonal_restrict, make_hermitian, re_part, satisfies_reality};
use leviscope::ils::{
    build_normal_form, build_quadric, classify_exact, codim_c, quadric_models_for_line, Germ, IlsConfig,
    NormalForm, Quadric,
};
use leviscope::leviflat::{degenerate_locus_scan, is_levi_flat, segre_variety, sing_ideal};
use leviscope::sweep::{CONTROL, LINE_SING_DIMENSION};
use leviscope::{GaussianRational, SpaceKind, VarSpace};
use proptest::strategy::Strategy;
use proptest::test_runner::{Config as ProptestConfig, TestRunner};

/// Per-check wall-clock limit for the Levi-flat sweep.
const TIME_LIMIT: Duration = Duration::from_secs(10);

/// `c` for each row with a finite value, at n = 3.
const FROZEN_C: [(NormalForm, usize); 8] = [
    (NormalForm::AInf, 0),
    (NormalForm::DInf, 1),
    (NormalForm::J { k: 2 }, 2),
    (NormalForm::TK2 { k: 4 }, 3),
    (NormalForm::Z { k: 1 }, 4),
    (NormalForm::W1, 5),
    (NormalForm::TQR { q: 3, r: 3 }, 3),
    (NormalForm::Q { k: 2 }, 4),
];

/// Collects the failures of one criterion.
#[derive(Default)]
struct Criterion {
    failures: Vec<String>,
}

impl Criterion {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }
}

fn run(name: &str, body: impl FnOnce(&mut Criterion)) -> bool {
    let start = Instant::now();
    let mut c = Criterion::default();
    body(&mut c);
    let verdict = if c.failures.is_empty() { "PASS" } else { "FAIL" };
    println!("{verdict} {name} ({} ms)", start.elapsed().as_millis());
    for f in &c.failures {
        println!("    {f}");
    }
    c.failures.is_empty()
}

fn levi_flat_sweep(c: &mut Criterion) {
    for form in NormalForm::SMALLEST {
        let f = re_part(build_normal_form(form, 3).unwrap().poly()).unwrap();
        let start = Instant::now();
        let flat = is_levi_flat(&f).unwrap().is_levi_flat;
        let took = start.elapsed();
        c.check(flat, || format!("{form}: not Levi-flat"));
        c.check(took < TIME_LIMIT, || format!("{form}: took {took:?}"));
    }
    for q in Quadric::all_defaults() {
        let e = build_quadric(&q, 3).unwrap();
        let start = Instant::now();
        let flat = is_levi_flat(&e.poly).unwrap().is_levi_flat;
        let took = start.elapsed();
        c.check(flat, || format!("{q}: not Levi-flat"));
        c.check(took < TIME_LIMIT, || format!("{q}: took {took:?}"));
    }
    let control = make_hermitian(&parse_in(CONTROL, &VarSpace::quadric_hermitian(2)).unwrap()).unwrap();
    let start = Instant::now();
    let r = is_levi_flat(&control).unwrap();
    let took = start.elapsed();
    c.check(!r.is_levi_flat && r.witness.is_some(), || {
        format!("control {CONTROL}: reported Levi-flat, expected false with a witness")
    });
    c.check(took < TIME_LIMIT, || format!("control: took {took:?}"));
}

fn singular_set_dimension(c: &mut Criterion) {
    for form in NormalForm::SMALLEST {
        let f = re_part(build_normal_form(form, 3).unwrap().poly()).unwrap();
        let dim = sing_ideal(&f).unwrap().dimension();
        c.check(dim == Ok(LINE_SING_DIMENSION), || {
            format!("{form}: dimension {dim:?}, expected {LINE_SING_DIMENSION}")
        });
    }
}

fn ils_invariants(c: &mut Criterion) {
    let config = IlsConfig::default();
    // The two smallest values against the independent linear-algebra count.
    for (form, expected) in [(NormalForm::AInf, 0), (NormalForm::DInf, 1)] {
        let p = build_normal_form(form, 2).unwrap();
        let tail: Vec<usize> = (6..=8).map(|n| truncated_codim(p.poly(), n)).collect();
        c.check(tail.iter().all(|&d| d == expected), || {
            format!("{form}: oracle d_6..d_8 = {tail:?}, expected {expected}")
        });
    }
    for (form, expected) in FROZEN_C {
        let got = codim_c(&build_normal_form(form, 3).unwrap(), &config).unwrap().c_value;
        c.check(got == Some(expected), || format!("{form}: c = {got:?}, expected {expected}"));
    }
    let s1 = codim_c(&build_normal_form(NormalForm::S1, 3).unwrap(), &config).unwrap();
    c.check(s1.c_value.is_some(), || {
        format!("{}: not stabilized by degree {}, d_N = {:?}", NormalForm::S1, config.degree_cap, s1.history)
    });
    let control = Germ::new(&parse_in("y1^2", &VarSpace::germ(2)).unwrap()).unwrap();
    let r = codim_c(&control, &config).unwrap();
    c.check(r.c_value.is_none() && r.is_ils != Some(true), || {
        format!("control y1^2: stabilized to {:?}", r.c_value)
    });
}

fn blowup_reproduction(c: &mut Criterion) {
    let p = parse_in("y1^2 + y2^2", &VarSpace::germ(2)).unwrap();
    let fc = complexify(&re_part(&p).unwrap());
    let chart = BlowupChart::new(&VarSpace::germ_complexified(2), &["y1", "y2", "w1", "w2"], None, &[]).unwrap();
    let target = chart.target().clone();
    let poly = |s: &str| parse_in(s, &target).unwrap();
    let (ft, m) = strict_transform(&chart, fc.poly()).unwrap();
    let expected = print_poly(&poly("1 + t^2 + s^2 + v^2"));
    c.check(print_poly(&ft) == expected && m == 2, || {
        format!("strict transform {} with multiplicity {m}, expected {expected} with 2", print_poly(&ft))
    });
    let alpha = alpha_beta(&fc, None).unwrap().alpha;
    let (at, k) = strict_transform_form(&chart, &alpha).unwrap();
    let idx = |v: &str| target.index_of(v).unwrap();
    let expected = [("t^2 + s^2", "u"), ("u*t", "t"), ("u*s", "s")]
        .iter()
        .fold(DiffForm::zero(&target, 1), |acc, (coef, var)| {
            acc.add(&DiffForm::term(&poly(coef), &[idx(var)])).unwrap()
        });
    c.check(at.to_string() == expected.to_string(), || {
        format!("transformed 1-form {at} (u-order {k}), expected {expected}")
    });
}

fn segre_suite(c: &mut Criterion) {
    let q24 = build_quadric(&Quadric::Q24, 3).unwrap();
    let samples: Vec<Vec<GaussianRational>> = ["0", "1", "-2", "1/3", "i", "2 - 3*i"]
        .iter()
        .map(|t| {
            let z = parse_in(t, &VarSpace::plain(&["q"]).unwrap()).unwrap().constant_term();
            vec![GaussianRational::from_integer(0), GaussianRational::from_integer(0), z]
        })
        .collect();
    match degenerate_locus_scan(&q24.poly, &samples) {
        Ok(scan) => {
            for (p, degenerate) in scan {
                c.check(degenerate, || format!("Q_{{2,4}} nondegenerate at {p:?}"));
            }
        }
        Err(e) => c.check(false, || format!("Q_{{2,4}} scan: {e}")),
    }
    for k in 1..=3 {
        let q = build_quadric(&Quadric::Q0 { k }, 3).unwrap();
        let origin = vec![GaussianRational::from_integer(0); 3];
        let r = segre_variety(&q.poly, &origin).unwrap();
        c.check(!r.degenerate, || format!("{}: degenerate at 0", q.quadric));
    }
    let names = |n| -> Vec<String> {
        quadric_models_for_line(n).unwrap().iter().map(|e| e.quadric.to_string()).collect()
    };
    c.check(names(3) == ["Q_{0,2}", "Q_{2,4}"], || format!("n = 3 models {:?}", names(3)));
    c.check(names(4) == ["Q_{0,6}"], || format!("n = 4 models {:?}", names(4)));
}

fn property<S: Strategy>(
    c: &mut Criterion,
    name: &str,
    strategy: S,
    test: impl Fn(S::Value) -> Outcome,
) {
    // Inline runs have no source file to persist failing seeds next to.
    let mut runner = TestRunner::new(ProptestConfig { failure_persistence: None, ..config() });
    if let Err(e) = runner.run(&strategy, test) {
        c.failures.push(format!("{name}: {e}"));
    }
}

fn property_suites(c: &mut Criterion) {
    let h = hermitian2;
    property(c, "d∘d = 0", (poly_in(h(), 5, 3), one_form(h())), |(f, w)| {
        d_squared_vanishes(&f, &w)
    });
    property(
        c,
        "Leibniz",
        (poly_in(h(), 4, 2), poly_in(h(), 4, 2), one_form(h()), one_form(h())),
        |(f, g, a, b)| leibniz_rule(&f, &g, &a, &b),
    );
    property(c, "wedge", (one_form(h()), one_form(h()), one_form(h())), |(a, b, w)| {
        wedge_graded_commutativity(&a, &b, &w)
    });
    property(c, "η ± i·dF", real_poly(), |p| eta_and_df_recover_alpha_and_beta(&p));
    property(
        c,
        "division",
        (poly_in(xyz(), 6, 3), poly_in(xyz(), 3, 2), poly_in(xyz(), 3, 2), proptest::bool::ANY),
        |(f, a, b, lex)| division_identity(&f, &a, &b, lex),
    );
    property(c, "Gröbner vs linear algebra", groebner_case(), |case| {
        groebner_agrees_with_linear_algebra(&case)
    });
}

fn corpus_files(dir: &Path) -> Vec<PathBuf> {
    let mut out = Vec::new();
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        if path.is_dir() {
            out.extend(corpus_files(&path));
        } else if path.extension().is_some_and(|e| e == "poly") {
            out.push(path);
        }
    }
    out.sort();
    out
}

fn expected_form(stem: &str) -> Option<NormalForm> {
    let spec = match stem {
        "a-inf" => "A",
        "d-inf" => "D",
        "j2" => "J k=2",
        "t42" => "T2 k=4",
        "z1" => "Z k=1",
        "w1" => "W1",
        "t33" => "Tqr q=3 r=3",
        "q2" => "Q k=2",
        "s1" => "S1",
        _ => return None,
    };
    Some(NormalForm::parse_spec(spec).unwrap().0)
}

fn round_trips(c: &mut Criterion) {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
    let files = corpus_files(&root);
    c.check(!files.is_empty(), || format!("no corpus under {}", root.display()));
    for path in files {
        let name = path.strip_prefix(&root).unwrap().display().to_string();
        let text = std::fs::read_to_string(&path).unwrap();
        let Ok(file) = parse_poly_file(&text) else {
            c.check(name.contains("bad-syntax"), || format!("{name}: does not parse"));
            continue;
        };
        let p = file.poly;
        let again = parse_poly_file(&format_poly_file(&p)).map(|f| f.poly);
        c.check(again.as_ref() == Ok(&p), || format!("{name}: print/parse changed the polynomial"));
        if p.space().kind() == SpaceKind::Hermitian {
            let f = make_hermitian(&p).unwrap();
            let back = diagonal_restrict(&complexify(&f));
            c.check(back == f, || format!("{name}: complexify/diagonal_restrict changed F"));
            c.check(!satisfies_reality(&p) || f.poly() == &p, || format!("{name}: real input rescaled"));
        }
        if let (Some(form), true) = (expected_form(path.file_stem().unwrap().to_str().unwrap()), name.starts_with("germs")) {
            let got = Germ::new(&p).ok().as_ref().and_then(classify_exact).map(|k| k.form);
            c.check(got == Some(form), || format!("{name}: classified as {got:?}, expected {form}"));
        }
    }
    for n in 2..=4 {
        for form in [
            NormalForm::AInf,
            NormalForm::DInf,
            NormalForm::J { k: 3 },
            NormalForm::TK2 { k: 5 },
            NormalForm::Z { k: 2 },
            NormalForm::W1,
            NormalForm::TQR { q: 4, r: 3 },
            NormalForm::Q { k: 3 },
            NormalForm::S1,
        ]
        .into_iter()
        .chain(NormalForm::SMALLEST)
        {
            let p = build_normal_form(form, n).unwrap();
            let got = classify_exact(&p).map(|k| (k.form, k.n));
            c.check(got == Some((form, n)), || format!("{form} n={n}: classified as {got:?}"));
        }
    }
}

fn main() {
    let results = [
        run("Levi-flat catalog sweep", levi_flat_sweep),
        run("singular-set dimension", singular_set_dimension),
        run("line-singularity invariants", ils_invariants),
        run("blow-up reproduction", blowup_reproduction),
        run("Segre suite", segre_suite),
        run("algebra property suites", property_suites),
        run("round trips", round_trips),
    ];
    let passed = results.iter().filter(|&&ok| ok).count();
    println!("{passed}/{} criteria passed", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}
