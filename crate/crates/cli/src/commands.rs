use std::collections::BTreeMap;
use std::fmt::Write as _;

use leviscope::blowup::{strict_transform, strict_transform_form, BlowupChart};
use leviscope::expr::{parse, parse_poly_file, print_poly};
use leviscope::forms::alpha_beta;
use leviscope::hermitian::{
    complexify, diagonal_restrict, make_hermitian, re_part, ComplexifiedPoly, HermitianPoly,
};
use leviscope::ils::{
    build_normal_form, check_theorem_a_hypotheses, classify_exact, codim_c, in_i2, tau_ideal, Germ,
    IlsConfig, NormalForm,
};
use leviscope::leviflat::{format_point, is_levi_flat, segre_variety, sing_ideal};
use leviscope::sweep::sweep;
use leviscope::{Error, GaussianRational, Poly, SpaceKind};
use serde_json::json;

use crate::report::{CliError, Outcome};
use crate::{CatalogAction, Command};

type Run = Result<Outcome, CliError>;

pub fn run(command: &Command) -> (&'static str, Run) {
    match command {
        Command::CheckLevi { file } => ("check-levi", check_levi(file)),
        Command::Complexify { file } => ("complexify", complexify_cmd(file)),
        Command::Sing { file } => ("sing", sing(file)),
        Command::Segre { file, point } => ("segre", segre(file, point)),
        Command::Ils { file } => ("ils", ils(file)),
        Command::Classify { file } => ("classify", classify(file)),
        Command::Catalog {
            action: CatalogAction::Verify { n },
        } => ("catalog verify", catalog_verify(*n)),
        Command::Blowup {
            file,
            center,
            chart,
            names,
        } => (
            "blowup",
            blowup(file, center, chart.as_deref(), names.as_deref()),
        ),
        Command::CheckTheoremA { file, normal_form } => {
            ("check-theorem-a", check_theorem_a(file, normal_form))
        }
    }
}

fn load(path: &str) -> Result<Poly, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.to_string(),
        message: e.to_string(),
    })?;
    parse_poly_file(&text)
        .map(|f| f.poly)
        .map_err(|error| CliError::Core {
            path: Some(path.to_string()),
            error,
        })
}

fn in_file(path: &str) -> impl Fn(Error) -> CliError + '_ {
    move |error| CliError::Core {
        path: Some(path.to_string()),
        error,
    }
}

/// How a file was read as a real defining function.
fn as_real(p: &Poly) -> Result<(HermitianPoly, &'static str), Error> {
    match p.space().kind() {
        SpaceKind::Hermitian => Ok((make_hermitian(p)?, "hermitian")),
        SpaceKind::Plain => Ok((re_part(p)?, "real part of a holomorphic polynomial")),
        SpaceKind::Complexified => Ok((
            diagonal_restrict(&ComplexifiedPoly::from_poly(p)?),
            "complexified",
        )),
    }
}

fn inputs(pairs: &[(&str, String)]) -> BTreeMap<String, String> {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect()
}

fn degree_cap() -> Result<IlsConfig, CliError> {
    let mut config = IlsConfig::default();
    if let Ok(v) = std::env::var("LEVISCOPE_DEGREE_CAP") {
        config.degree_cap = v.trim().parse().map_err(|_| {
            CliError::Usage(format!(
                "LEVISCOPE_DEGREE_CAP must be a positive integer, got `{v}`"
            ))
        })?;
    }
    Ok(config)
}

fn check_levi(path: &str) -> Run {
    let p = load(path)?;
    let (f, reading) = as_real(&p).map_err(in_file(path))?;
    let r = is_levi_flat(&f).map_err(in_file(path))?;
    let witness = r.witness.as_ref().map(|w| {
        json!({
            "basis": w.basis.join("∧"),
            "coefficient": print_poly(&w.coefficient),
            "remainder": print_poly(&w.remainder),
        })
    });
    let mut text = format!("F = {f}\nlevi-flat: {}\n", r.is_levi_flat);
    if let Some(w) = &r.witness {
        let _ = writeln!(
            text,
            "witness: coefficient of {} leaves remainder {} after division by F",
            w.basis.join("∧"),
            w.remainder
        );
    }
    Ok(Outcome {
        inputs: inputs(&[("F", f.to_string())]),
        result: json!({
            "is_levi_flat": r.is_levi_flat,
            "reading": reading,
            "normalization": f.normalization().to_string(),
            "obstruction_degree": r.obstruction_degree,
            "obstruction_terms": r.obstruction_terms,
            "assumes_irreducible": r.assumes_irreducible,
            "witness": witness,
        }),
        text,
        verdict: r.is_levi_flat,
    })
}

fn complexify_cmd(path: &str) -> Run {
    let p = load(path)?;
    let (f, _) = as_real(&p).map_err(in_file(path))?;
    let fc = complexify(&f);
    Ok(Outcome {
        inputs: inputs(&[("F", f.to_string())]),
        result: json!({
            "variables": fc.space().names(),
            "complexified": fc.to_string(),
        }),
        text: format!("F_C = {fc}\n"),
        verdict: true,
    })
}

fn sing(path: &str) -> Run {
    let p = load(path)?;
    let (f, _) = as_real(&p).map_err(in_file(path))?;
    let ideal = sing_ideal(&f).map_err(in_file(path))?;
    let gens: Vec<String> = ideal.generators().iter().map(print_poly).collect();
    let dimension = match ideal.dimension() {
        Ok(d) => Some(d),
        Err(Error::EmptyVariety) => None,
        Err(e) => return Err(e.into()),
    };
    let mut text = format!("generators ({}):\n", ideal.space().names().join(", "));
    for g in &gens {
        let _ = writeln!(text, "  {g}");
    }
    match dimension {
        Some(d) => {
            let _ = writeln!(text, "dimension: {d}");
        }
        None => text.push_str("dimension: empty\n"),
    }
    Ok(Outcome {
        inputs: inputs(&[("F", f.to_string())]),
        result: json!({
            "variables": ideal.space().names(),
            "generators": gens,
            "dimension": dimension,
        }),
        text,
        verdict: true,
    })
}

fn parse_point(s: &str) -> Result<Vec<GaussianRational>, CliError> {
    s.split(',')
        .map(|c| {
            let p = parse(c.trim()).map_err(|e| CliError::Usage(format!("--point `{c}`: {e}")))?;
            if !p.is_constant() {
                return Err(CliError::Usage(format!(
                    "--point `{}` is not a constant",
                    c.trim()
                )));
            }
            Ok(p.constant_term())
        })
        .collect()
}

fn segre(path: &str, point: &str) -> Run {
    let p = load(path)?;
    let (f, _) = as_real(&p).map_err(in_file(path))?;
    let pt = parse_point(point)?;
    let r = segre_variety(&f, &pt)?;
    let text = if r.degenerate {
        format!("Q_p is the whole space at ({})\n", format_point(&pt))
    } else {
        format!("Q_p = {{{} = 0}}\n", r.variety)
    };
    Ok(Outcome {
        inputs: inputs(&[("F", f.to_string()), ("point", format_point(&pt))]),
        result: json!({
            "degenerate": r.degenerate,
            "variety": print_poly(&r.variety),
        }),
        text,
        verdict: true,
    })
}

fn germ(path: &str) -> Result<Germ, CliError> {
    let p = load(path)?;
    Germ::new(&p).map_err(in_file(path))
}

fn ils(path: &str) -> Run {
    let f = germ(path)?;
    let config = degree_cap()?;
    let inputs = inputs(&[("f", f.to_string())]);
    if !in_i2(&f) {
        return Ok(Outcome {
            inputs,
            result: json!({ "in_i2": false }),
            text: "in I²: false\n".to_string(),
            verdict: false,
        });
    }
    let tau: Vec<String> = tau_ideal(&f)
        .map_err(in_file(path))?
        .generators()
        .iter()
        .map(print_poly)
        .collect();
    let r = codim_c(&f, &config)?;
    let mut text = String::from("in I²: true\ntau generators:\n");
    for g in &tau {
        let _ = writeln!(text, "  {g}");
    }
    match (r.c_value, r.stabilized_at) {
        (Some(c), Some(n)) => {
            let _ = writeln!(text, "c = {c} (stable from N = {n})\nis ILS: true");
        }
        _ => {
            let _ = writeln!(
                text,
                "c: not stabilized by degree {}\nis ILS: unknown",
                config.degree_cap
            );
        }
    }
    Ok(Outcome {
        inputs,
        result: json!({
            "in_i2": true,
            "tau_generators": tau,
            "c": r.c_value,
            "stabilized_at": r.stabilized_at,
            "is_ils": r.is_ils,
            "degree_cap": config.degree_cap,
            "history": r.history,
        }),
        text,
        verdict: r.is_ils == Some(true),
    })
}

fn classify(path: &str) -> Run {
    let f = germ(path)?;
    let c = classify_exact(&f);
    let text = match &c {
        Some(c) => format!("{}\nvia {}\n", c.form, c.description()),
        None => "no table row matches up to permutation and scaling\n".to_string(),
    };
    Ok(Outcome {
        inputs: inputs(&[("f", f.to_string())]),
        result: match &c {
            Some(c) => json!({
                "form": c.form.to_string(),
                "spec": c.form.spec(),
                "n": c.n,
                "transform": c.description(),
            }),
            None => json!(null),
        },
        text,
        verdict: c.is_some(),
    })
}

fn catalog_verify(n: usize) -> Run {
    if n < 3 {
        return Err(CliError::Usage(format!("--n must be at least 3, got {n}")));
    }
    let config = degree_cap()?;
    let s = sweep(n, &config)?;
    let mut text = String::new();
    for g in &s.germs {
        let _ = writeln!(
            text,
            "{} {:<12} levi-flat={} sing-dim={} c={} round-trip={} ({} ms)",
            if g.passed() { "PASS" } else { "FAIL" },
            g.name,
            g.levi_flat,
            g.sing_dimension.map_or("empty".into(), |d| d.to_string()),
            g.c_value.map_or("unstable".into(), |c| c.to_string()),
            g.round_trip,
            g.elapsed_ms
        );
    }
    for q in &s.quadrics {
        let _ = writeln!(
            text,
            "{} {:<12} levi-flat={} singular set {} ({} ms)",
            if q.levi_flat { "PASS" } else { "FAIL" },
            q.name,
            q.levi_flat,
            q.singular_set,
            q.elapsed_ms
        );
    }
    let _ = writeln!(
        text,
        "{} control {} levi-flat={}",
        if s.control.levi_flat { "FAIL" } else { "PASS" },
        s.control.polynomial,
        s.control.levi_flat
    );
    Ok(Outcome {
        inputs: inputs(&[("n", n.to_string())]),
        result: serde_json::to_value(&s).expect("serializable"),
        text,
        verdict: s.passed(),
    })
}

fn split_list(s: &str) -> Vec<&str> {
    s.split(',').map(str::trim).filter(|v| !v.is_empty()).collect()
}

fn blowup(path: &str, center: &str, chart: Option<&str>, names: Option<&str>) -> Run {
    let p = load(path)?;
    // A real defining function is blown up through its complexification.
    let source = match p.space().kind() {
        SpaceKind::Hermitian => complexify(&make_hermitian(&p).map_err(in_file(path))?),
        SpaceKind::Complexified => ComplexifiedPoly::from_poly(&p).map_err(in_file(path))?,
        SpaceKind::Plain => return blowup_plain(path, &p, center, chart, names),
    };
    let renames = parse_names(names)?;
    let chart = BlowupChart::new(source.space(), &split_list(center), chart, &renames)?;
    let (ft, m) = strict_transform(&chart, source.poly())?;
    let alpha = alpha_beta(&source, None)?.alpha;
    let (at, k) = strict_transform_form(&chart, &alpha)?;
    let subst: Vec<String> = chart
        .substitution()
        .iter()
        .map(|(a, b)| format!("{a} -> {b}"))
        .collect();
    let text = format!(
        "chart: {}\nstrict transform: {ft} (multiplicity {m})\nalpha: {at} (multiplicity {k})\n",
        subst.join(", ")
    );
    Ok(Outcome {
        inputs: inputs(&[("F_C", source.to_string()), ("center", center.to_string())]),
        result: json!({
            "variables": chart.target().names(),
            "substitution": subst,
            "strict_transform": print_poly(&ft),
            "multiplicity": m,
            "alpha_transform": at.to_string(),
            "alpha_multiplicity": k,
        }),
        text,
        verdict: true,
    })
}

fn blowup_plain(
    path: &str,
    p: &Poly,
    center: &str,
    chart: Option<&str>,
    names: Option<&str>,
) -> Run {
    let renames = parse_names(names)?;
    let chart = BlowupChart::new(p.space(), &split_list(center), chart, &renames)?;
    let (ft, m) = strict_transform(&chart, p).map_err(in_file(path))?;
    let subst: Vec<String> = chart
        .substitution()
        .iter()
        .map(|(a, b)| format!("{a} -> {b}"))
        .collect();
    Ok(Outcome {
        inputs: inputs(&[("f", print_poly(p)), ("center", center.to_string())]),
        result: json!({
            "variables": chart.target().names(),
            "substitution": subst,
            "strict_transform": print_poly(&ft),
            "multiplicity": m,
        }),
        text: format!(
            "chart: {}\nstrict transform: {ft} (multiplicity {m})\n",
            subst.join(", ")
        ),
        verdict: true,
    })
}

fn parse_names(names: Option<&str>) -> Result<Vec<(&str, &str)>, CliError> {
    names
        .map(split_list)
        .unwrap_or_default()
        .into_iter()
        .map(|pair| {
            pair.split_once('=')
                .map(|(a, b)| (a.trim(), b.trim()))
                .ok_or_else(|| CliError::Usage(format!("--names expects old=new, found `{pair}`")))
        })
        .collect()
}

fn check_theorem_a(path: &str, spec: &str) -> Run {
    let p = load(path)?;
    let (f, _) = as_real(&p).map_err(in_file(path))?;
    let (form, n) = NormalForm::parse_spec(spec)?;
    let n = n.unwrap_or(f.dimension().saturating_sub(1));
    let model = build_normal_form(form, n)?;
    let r = check_theorem_a_hypotheses(&f, &model)?;
    let mut text = format!(
        "P = {} ({})\nH = {}\n",
        model,
        r.classification.form,
        print_poly(&r.h)
    );
    let _ = writeln!(text, "(a) H(x,0) = 0: {}", r.vanishes_on_line);
    let _ = writeln!(
        text,
        "(b) jet of order {} of H vanishes: {}{}",
        r.jet_order,
        r.jet_vanishes,
        if r.degree_ambiguous {
            " (P is not homogeneous; total degree used)"
        } else {
            ""
        }
    );
    let _ = writeln!(text, "(c) Levi-flat: {}", r.levi_flat);
    let _ = writeln!(text, "applies: {}", r.theorem);
    if let Some(c) = r.conclusion() {
        let _ = writeln!(text, "conclusion: {c}");
    }
    Ok(Outcome {
        inputs: inputs(&[
            ("F", f.to_string()),
            ("P", model.to_string()),
            ("normal_form", form.spec()),
        ]),
        result: json!({
            "h": print_poly(&r.h),
            "h_on_line": print_poly(&r.h_on_line),
            "vanishes_on_line": r.vanishes_on_line,
            "jet_order": r.jet_order,
            "h_low_degree": r.h_low_degree,
            "jet_vanishes": r.jet_vanishes,
            "degree_ambiguous": r.degree_ambiguous,
            "levi_flat": r.levi_flat,
            "theorem": r.theorem,
            "conclusion": r.conclusion(),
        }),
        text,
        verdict: r.conclusion().is_some(),
    })
}
