//! The commands. Each appends rows and violations to the report; rows come
//! out in sample order, which is fixed by the seed.

use std::path::Path;

use ordlift::causal::{check_bounds, iota, psi_contains_tau, psi_estimate, CircleCover};
use ordlift::circle::sample::Sampler;
use ordlift::circle::{is_above_identity, pointwise_compare, CircleElement, ComparisonVerdict, Kind};
use ordlift::num::rational::to_f64;
use ordlift::num::{fmt_q, qi, Interval, Q};
use ordlift::order::{growth_en, growth_limit, CircleOrder, IntegerOrder, OrderOracle, Positivity, Sandwich};
use ordlift::quasimorphism::{sandwich_audit, IntegerIdentity, Quasimorphism, TranslationNumber};
use ordlift::suite::{self, SuiteConfig, CRITERIA};
use ordlift::surface::sample::WordSampler;
use ordlift::surface::{check_order_preserving, example_hyperbolization, f_sigma, lambda_fit, lift_evaluate, parse_rep, LambdaFit};

use crate::config::{Command, CoverSpec, RunConfig};
use crate::plot::{Plot, Style};
use crate::report::Report;
use crate::CliError;

pub fn dispatch(cfg: &RunConfig, r: &mut Report) -> Result<(), CliError> {
    match cfg.command {
        Command::Tau => tau(cfg, r),
        Command::Compare => compare(cfg, r),
        Command::Growth => growth(cfg, r),
        Command::SandwichAudit => sandwich(cfg, r),
        Command::RepCheck => rep_check(cfg, r),
        Command::Causal => causal(cfg, r),
        Command::Suite => run_suite(cfg, r),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn input(cfg: &RunConfig) -> Result<&Path, CliError> {
    cfg.input.as_deref().ok_or_else(|| CliError::Input(format!("{} needs --input", cfg.command.name())))
}

/// One circle element per line; blank lines and `#` comments skipped.
pub fn read_elements(path: &Path) -> Result<Vec<CircleElement>, CliError> {
    let text = read(path)?;
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let g = line.parse().map_err(|e| CliError::Input(format!("{}:{}: {e}", path.display(), i + 1)))?;
        out.push(g);
    }
    Ok(out)
}

fn pair(cfg: &RunConfig) -> Result<(CircleElement, CircleElement), CliError> {
    let path = input(cfg)?;
    match <[CircleElement; 2]>::try_from(read_elements(path)?) {
        Ok([g, h]) if g.kind() == h.kind() => Ok((g, h)),
        Ok(_) => Err(CliError::Input(format!("{}: elements of different kinds", path.display()))),
        Err(v) => Err(CliError::Input(format!("{}: expected two elements g and h, found {}", path.display(), v.len()))),
    }
}

fn interval_cells(i: &Interval) -> [String; 2] {
    [fmt_q(i.lo()), fmt_q(i.hi())]
}

fn tau(cfg: &RunConfig, r: &mut Report) -> Result<(), CliError> {
    let elements = read_elements(input(cfg)?)?;
    if elements.is_empty() {
        return Err(CliError::Input("no elements in the input".into()));
    }
    for g in &elements {
        let t = g.translation_number(&cfg.tol)?;
        let [lo, hi] = interval_cells(&t);
        r.row(["tau".to_string(), lo, hi]);
    }
    Ok(())
}

/// `x + q < h(x)` relative to `g`, checked against translation numbers:
/// strictly below forces `tau(g) + q <= tau(h)`.
fn compare(cfg: &RunConfig, r: &mut Report) -> Result<(), CliError> {
    let (g, h) = pair(cfg)?;
    let q = qi(cfg.q);
    let verdict = pointwise_compare(&g, &h, &q, true)?;
    let (tg, th) = (g.translation_number(&cfg.tol)?, h.translation_number(&cfg.tol)?);
    r.row(["compare".to_string(), fmt_q(&q), verdict.to_string()]);
    for (name, t) in [("tau_g", &tg), ("tau_h", &th)] {
        let [lo, hi] = interval_cells(t);
        r.row([name.to_string(), lo, hi]);
    }
    let consistent = match verdict {
        ComparisonVerdict::StrictlyBelow => tg.lo() + &q <= *th.hi(),
        ComparisonVerdict::StrictlyAbove => th.lo() + &q <= *tg.hi(),
        ComparisonVerdict::Equal => tg.intersects(&th),
        ComparisonVerdict::Incomparable { .. } => true,
    };
    if !consistent {
        r.violation(format!("verdict {verdict} against tau(g) = {tg}, tau(h) = {th}"));
    }
    Ok(())
}

fn growth_rows<O: OrderOracle>(
    cfg: &RunConfig,
    r: &mut Report,
    order: &O,
    g: &O::Elem,
    h: &O::Elem,
    big_n: i64,
) -> Result<Vec<(f64, f64)>, CliError> {
    let mut points = Vec::new();
    for n in 1..=big_n {
        let rec = growth_en(order, g, h, n, cfg.power_cap)?;
        if !(rec.attained && rec.minimal && rec.up_closed) {
            r.violation(format!("e_{n} = {}: attained {}, minimal {}, up-closed {}", rec.e_n, rec.attained, rec.minimal, rec.up_closed));
        }
        let ratio = qi(rec.e_n) / qi(n);
        points.push((n as f64, to_f64(&ratio)));
        r.row(["e_n".to_string(), n.to_string(), rec.e_n.to_string(), fmt_q(&ratio)]);
    }
    Ok(points)
}

fn growth(cfg: &RunConfig, r: &mut Report) -> Result<(), CliError> {
    let big_n = cfg.n.unwrap_or(10);
    if big_n < 1 {
        return Err(CliError::Input("n must be at least 1".into()));
    }
    let (points, limit, target) = match &cfg.input {
        None => {
            // the integers with f(n) = n and C = 1
            let (g, h) = (cfg.g, cfg.h);
            let points = growth_rows(cfg, r, &IntegerOrder, &g, &h, big_n)?;
            let f = IntegerIdentity;
            let limit = growth_limit(&IntegerOrder, &g, &h, big_n, Some(Sandwich { f: &f, c: qi(1) }), cfg.power_cap)?;
            let target = f.eval(&h)?.div(&f.eval(&g)?);
            (points, limit, target)
        }
        Some(_) => {
            let (g, h) = pair(cfg)?;
            let order = CircleOrder::q_order(g.kind(), cfg.q);
            let points = growth_rows(cfg, r, &order, &g, &h, big_n)?;
            let f = TranslationNumber { tol: cfg.tol.clone() };
            let sandwich = Sandwich { f: &f, c: qi(cfg.q + 1) };
            let limit = growth_limit(&order, &g, &h, big_n, Some(sandwich), cfg.power_cap)?;
            (points, limit, f.eval(&h)?.div(&f.eval(&g)?))
        }
    };
    r.row(["estimate".to_string(), fmt_q(&limit.estimate)]);
    if let Some(i) = &limit.interval {
        let [lo, hi] = interval_cells(i);
        r.row(["interval".to_string(), lo, hi]);
        match &target {
            Some(t) => {
                let [lo, hi] = interval_cells(t);
                r.row(["ratio".to_string(), lo, hi]);
                let holds = match t.exact() {
                    Some(x) => i.contains(x),
                    None => i.intersects(t),
                };
                if !holds {
                    r.violation(format!("f(h)/f(g) in {t} outside the certified interval {i}"));
                }
            }
            None => r.violation("f(g) encloses zero; the ratio is undefined".to_string()),
        }
    }
    r.plot = Some(Plot {
        title: "relative growth e_n/n".into(),
        x_label: "n".into(),
        y_label: "e_n / n".into(),
        style: Style::Line,
        points,
        level: target.as_ref().map(|t| to_f64(&t.midpoint())),
    });
    Ok(())
}

/// Samples `g` composed with translations by `0..=q+3` so that every
/// side of the threshold `C = q + 1` is populated.
fn sandwich(cfg: &RunConfig, r: &mut Report) -> Result<(), CliError> {
    let n = cfg.samples.unwrap_or(200);
    let mut s = Sampler::new(cfg.seed);
    let mut samples = Vec::with_capacity(n);
    for i in 0..n {
        let g = if i % 2 == 0 { s.element(cfg.kind) } else { s.above_identity(cfg.kind) };
        let shift = (i as i64) % (cfg.q + 4);
        samples.push(CircleElement::translation(qi(shift), cfg.kind)?.compose(&g)?);
    }
    let order = CircleOrder::q_order(cfg.kind, cfg.q);
    let c: Q = qi(cfg.q + 1);
    let f = TranslationNumber { tol: cfg.tol.clone() };
    let rep = sandwich_audit(&f, &c, &order, &samples)?;
    let mut positive = 0;
    for g in &samples {
        if order.positivity(g)? == Positivity::PositiveNonIdentity {
            positive += 1;
            // nonidentity positives of <=_q have tau >= q
            let t = f.eval(g)?;
            if t.hi() < &qi(cfg.q) {
                r.violation(format!("{g} is positive for q = {} but tau = {t}", cfg.q));
            }
        }
    }
    r.row(["checked".to_string(), rep.checked.to_string()]);
    r.row(["constant".to_string(), fmt_q(&c)]);
    r.row(["positive".to_string(), positive.to_string()]);
    r.row(["undecided".to_string(), rep.undecided.len().to_string()]);
    for v in rep.violations {
        r.violation(v);
    }
    Ok(())
}

fn rep_check(cfg: &RunConfig, r: &mut Report) -> Result<(), CliError> {
    let (rho, file_words) = parse_rep(&read(input(cfg)?)?)?;
    let reference = match &cfg.reference {
        Some(p) => parse_rep(&read(p)?)?.0,
        None => example_hyperbolization(&rho.surface)?,
    };
    if !reference.reference {
        return Err(CliError::Input("the reference file must contain a `reference` line".into()));
    }
    if reference.surface != rho.surface {
        return Err(CliError::Input(format!("surfaces differ: {:?} and {:?}", rho.surface, reference.surface)));
    }
    let words = if file_words.is_empty() {
        WordSampler::new(cfg.seed, rho.surface.rank()).positive_words(&reference, cfg.q, cfg.samples.unwrap_or(50))?
    } else {
        file_words
    };
    let target = CircleOrder::q_order(Kind::Moebius, cfg.q);
    let pres = check_order_preserving(&rho, &reference, cfg.q, &target, &words)?;
    r.row(["words".to_string(), pres.checked.to_string()]);
    r.row(["positive_words".to_string(), pres.positive_words.to_string()]);
    for v in pres.violations.iter().chain(&pres.strictness) {
        r.violation(v.clone());
    }
    match lambda_fit(&rho, &reference, &words, &cfg.tol)? {
        LambdaFit::Proportional { lambda, toledo, .. } => {
            let [lo, hi] = interval_cells(&lambda);
            r.row(["lambda".to_string(), lo, hi]);
            let [lo, hi] = interval_cells(&toledo);
            r.row(["toledo".to_string(), lo, hi]);
        }
        LambdaFit::NonProportional { first, second } => {
            r.row(["lambda".to_string(), "none".to_string(), format!("{first} / {second}")]);
        }
    }
    let mut points = Vec::new();
    for w in &words {
        let fs = f_sigma(&reference, w, &cfg.tol)?;
        let t = lift_evaluate(&rho, w)?.translation_number()?;
        points.push((to_f64(&fs.midpoint()), to_f64(&t.midpoint())));
    }
    r.plot = Some(Plot {
        title: "translation number against f_Sigma".into(),
        x_label: "f_Sigma(w)".into(),
        y_label: "tau(rho(w))".into(),
        style: Style::Scatter,
        points,
        level: None,
    });
    Ok(())
}

fn causal(cfg: &RunConfig, r: &mut Report) -> Result<(), CliError> {
    match &cfg.cover {
        CoverSpec::Circle { kind, spread } => {
            let cover = match spread {
                Some(d) => CircleCover::with_spread(*kind, d.clone())?,
                None => CircleCover::new(*kind),
            };
            causal_circle(cfg, r, &cover)
        }
        CoverSpec::Lagrangian { n } => causal_lagrangian(cfg, r, *n),
    }
}

fn causal_circle(cfg: &RunConfig, r: &mut Report, cover: &CircleCover) -> Result<(), CliError> {
    use ordlift::causal::CausalCoverInstance;
    let kind = cover.kind();
    let n = cfg.samples.unwrap_or(300);
    let big_n = cfg.n.unwrap_or(1000);
    if big_n < 1 {
        return Err(CliError::Input("n must be at least 1".into()));
    }
    let mut s = Sampler::new(cfg.seed);
    r.row(["instance".to_string(), cover.describe()]);
    let mut window_ok = 0;
    for _ in 0..n {
        let (x, y) = (cover.sample_point(&mut s), cover.sample_point(&mut s));
        let v = iota(cover, &x, &y)?;
        if v == cover.iota_closed_form(&x, &y)? {
            window_ok += 1;
        } else {
            r.violation(format!("iota({x}, {y}) = {v}, ceiling {}", cover.iota_closed_form(&x, &y)?));
        }
    }
    r.row(["iota".to_string(), window_ok.to_string(), n.to_string()]);
    let samples: Vec<_> = (0..n)
        .map(|_| {
            let (g, h) = (s.element(kind), s.element(kind));
            let (x, y) = (cover.sample_point(&mut s), cover.sample_point(&mut s));
            let k = rand::Rng::random_range(s.rng(), -5i64..=5);
            (g, h, x, y, k)
        })
        .collect();
    let bounds = check_bounds(cover, &samples)?;
    r.row(["bounds".to_string(), bounds.checked.to_string(), bounds.violations.len().to_string()]);
    for v in bounds.violations {
        r.violation(v);
    }
    let m = (n / 3).max(1);
    let mut contained = 0;
    for i in 0..m {
        let shift = qi((i % 9) as i64);
        let g = CircleElement::translation(shift, kind)?.compose(&s.element(kind))?;
        let x = cover.sample_point(&mut s);
        let psi = psi_estimate(cover, &g, big_n, &x)?;
        let (inside, t) = psi_contains_tau(&psi, &g, &cfg.tol)?;
        if inside {
            contained += 1;
        } else {
            r.violation(format!("psi {psi} does not contain tau {t} for {g}"));
        }
        if psi.lo() > &qi(5) && !is_above_identity(&g)? {
            r.violation(format!("psi {psi} above 5 but {g} is not above the identity"));
        }
    }
    r.row(["psi".to_string(), contained.to_string(), m.to_string()]);
    Ok(())
}

#[cfg(feature = "lagrangian")]
fn causal_lagrangian(cfg: &RunConfig, r: &mut Report, dim: usize) -> Result<(), CliError> {
    use ordlift::causal::lagrangian::{rank_one_agreement, spectral_vs_path, LagrangianCover, PathSearch, POINT_TOL};
    use ordlift::causal::{check_monotone_height, CausalCoverInstance};
    use ordlift::Error;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    let cover = LagrangianCover::new(dim)?;
    let n = cfg.samples.unwrap_or(100);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    r.row(["instance".to_string(), cover.describe()]);
    let (mut checked, mut undecided) = (0, 0);
    for _ in 0..n {
        let sample = [(
            cover.sample_element(&mut rng),
            cover.sample_element(&mut rng),
            cover.sample_point(&mut rng),
            cover.sample_point(&mut rng),
            rand::Rng::random_range(&mut rng, -3i64..=3),
        )];
        match check_bounds(&cover, &sample) {
            Ok(b) => {
                checked += b.checked;
                for v in b.violations {
                    r.violation(v);
                }
            }
            Err(Error::Undecided(m)) => {
                undecided += 1;
                log::info!("undecided bound sample: {m}");
            }
            Err(e) => return Err(e.into()),
        }
    }
    r.row(["bounds".to_string(), checked.to_string(), undecided.to_string()]);
    let pairs: Vec<_> = (0..n).map(|_| (cover.sample_point(&mut rng), cover.sample_point(&mut rng))).collect();
    let (comparable, bad) = check_monotone_height(&cover, &pairs)?;
    r.row(["monotone_height".to_string(), comparable.to_string(), bad.len().to_string()]);
    for v in bad {
        r.violation(v);
    }
    // agreement rates are diagnostics with no threshold
    let agreement = match dim {
        1 => {
            let mut s = Sampler::new(cfg.seed);
            let pairs: Vec<_> = (0..n).map(|_| (s.rational(40, 12), s.rational(40, 12))).collect();
            Some(("circle", rank_one_agreement(&pairs, POINT_TOL)?))
        }
        2 => Some(("path_search", spectral_vs_path(&cover, &PathSearch::default(), &mut rng, n)?)),
        _ => None,
    };
    if let Some((against, a)) = agreement {
        for d in &a.discrepancies {
            log::warn!("{against} discrepancy: {d}");
        }
        r.row([
            "agreement".to_string(),
            against.to_string(),
            a.agree.to_string(),
            a.total.to_string(),
            a.undecided.to_string(),
            format!("{:.4}", a.rate()),
        ]);
    }
    Ok(())
}

#[cfg(not(feature = "lagrangian"))]
fn causal_lagrangian(_cfg: &RunConfig, _r: &mut Report, _dim: usize) -> Result<(), CliError> {
    Err(CliError::Input("built without the lagrangian feature".into()))
}

fn run_suite(cfg: &RunConfig, r: &mut Report) -> Result<(), CliError> {
    let sc = SuiteConfig { seed: cfg.seed, samples: cfg.samples, power_cap: cfg.power_cap };
    let ids: Vec<u8> = match cfg.criterion {
        Some(id) => vec![id],
        None => CRITERIA.iter().map(|(id, _)| *id).collect(),
    };
    for id in ids {
        let o = suite::run(id, &sc).map_err(|e| CliError::Input(e.to_string()))?;
        log::info!("{o}");
        let verdict = if o.skipped {
            "skip"
        } else if o.passed {
            "pass"
        } else {
            "fail"
        };
        r.row(["criterion".to_string(), o.id.to_string(), o.title.to_string(), verdict.to_string(), o.summary.clone()]);
        for v in o.violations {
            r.violation(format!("criterion {}: {v}", o.id));
        }
    }
    Ok(())
}
