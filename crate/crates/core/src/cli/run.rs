use std::collections::BTreeSet;
use std::sync::Arc;

use num_complex::Complex64;
use serde_json::json;

use crate::coaction::{
    delta_apply_into, fell_intertwiner, fell_w, id_tensor_character, qf_spanning_set,
    spectral_decompose, AlgebraElement, CoactionSpec,
};
use crate::error::{Error, Result};
use crate::fdapprox::{build_y, kernel_set, pi_f, stabilization_index, support_set};
use crate::funcalg::{
    circle_operator, conjugated_mult_operator, monomial_norm, monomials_of_degree,
    mult_operator, multiplier_norm_lower_with, n_coaction, root_of_unity, KernelFamily,
    Polynomial,
};
use crate::linrep::{graded_space, lambda_adjoint, operator_norm_with, NormOptions, SparseOperator};
use crate::monoid::{
    left_divisors, right_divisors, right_lcm_check, ControlledMap, Element, EnumerationTable,
    MonoidPresentation,
};

use super::config::{Command, ElementSpec, MapChoice, RunConfig};
use super::report::Report;

/// Pair and triple budgets for the sampled algebraic laws.
const PAIR_BUDGET: usize = 200_000;
const TRIPLE_BUDGET: usize = 100_000;
/// Entrywise tolerance for floating identities in the function algebra.
const FLOAT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy)]
pub struct ExecOptions {
    pub max_words: u64,
    pub norm_tol: f64,
}

impl Default for ExecOptions {
    fn default() -> Self {
        Self {
            max_words: crate::monoid::DEFAULT_MAX_WORDS,
            norm_tol: 1e-9,
        }
    }
}

/// Process exit status for a finished run: 0 iff every check passed.
pub fn exit_status(outcome: &Result<Report>) -> i32 {
    match outcome {
        Ok(r) if r.all_pass() => 0,
        Ok(_) => 1,
        Err(e) => error_status(e),
    }
}

pub fn error_status(e: &Error) -> i32 {
    match e {
        Error::ResourceLimit(_) | Error::NoConvergence { .. } => 3,
        Error::CheckFailed { .. } | Error::NotCancellative(_) | Error::NotHomomorphism(_) => 1,
        _ => 2,
    }
}

/// Runs the configured computation with every attached identity check.
pub fn execute(config: &RunConfig, opts: ExecOptions) -> Result<Report> {
    config.validate()?;
    let opts = ExecOptions {
        max_words: config.max_words.unwrap_or(opts.max_words),
        norm_tol: config.norm_tol.unwrap_or(opts.norm_tol),
    };
    let echo = serde_json::to_value(config).map_err(|e| Error::InvalidParams(e.to_string()))?;
    let mut report = Report::new(echo);
    match config.command {
        Command::Enumerate => run_enumerate(config, opts, &mut report)?,
        Command::Divisors => run_divisors(config, opts, &mut report)?,
        Command::Fdapprox => run_fdapprox(config, opts, &mut report)?,
        Command::Coaction => run_coaction(config, opts, &mut report)?,
        Command::Funcalg => run_funcalg(config, opts, &mut report)?,
    }
    Ok(report)
}

fn load_presentation(config: &RunConfig) -> Result<MonoidPresentation> {
    config
        .presentation
        .as_ref()
        .ok_or_else(|| Error::InvalidParams("missing presentation".into()))?
        .load()
}

fn norm_opts(opts: ExecOptions) -> NormOptions {
    NormOptions {
        tol: opts.norm_tol,
        ..Default::default()
    }
}

fn names(table: &EnumerationTable, set: impl IntoIterator<Item = Element>) -> Vec<String> {
    set.into_iter().map(|e| table.format(e)).collect()
}

fn cancellation_check(report: &mut Report, table: &EnumerationTable) {
    let failure = table.ensure_cancellative().err().map(|e| e.to_string());
    report.check("cancellative", failure.is_none(), failure);
}

fn run_enumerate(config: &RunConfig, opts: ExecOptions, report: &mut Report) -> Result<()> {
    let pres = load_presentation(config)?;
    let bound = config.length.unwrap_or(8);
    let table = EnumerationTable::with_limit(pres.clone(), bound, opts.max_words)?;

    report.table("presentation", pres.to_doc());
    report.table("counts", table.counts());
    report.table("total", table.len());
    report.table(
        "elements",
        table.elements_upto(bound.min(4)).map(|e| table.format(e)).collect::<Vec<_>>(),
    );

    cancellation_check(report, &table);

    let again = EnumerationTable::with_limit(pres, bound, opts.max_words)?;
    let stable = again.counts() == table.counts()
        && table.elements().all(|e| again.word(e) == table.word(e));
    report.check("re_enumeration_stable", stable, table.counts());

    // length additivity on pairs
    let mut pairs = 0usize;
    let mut bad_pair = None;
    'pairs: for x in table.elements() {
        for y in table.elements_upto(bound - table.length(x)) {
            if pairs == PAIR_BUDGET {
                break 'pairs;
            }
            pairs += 1;
            let xy = table.multiply(x, y)?;
            if table.length(xy) != table.length(x) + table.length(y) {
                bad_pair = Some(format!("{} · {}", table.format(x), table.format(y)));
                break 'pairs;
            }
        }
    }
    report.check(
        "length_additive",
        bad_pair.is_none(),
        json!({"pairs": pairs, "witness": bad_pair}),
    );

    // associativity on triples
    let mut triples = 0usize;
    let mut bad_triple = None;
    'triples: for x in table.elements() {
        let rx = bound - table.length(x);
        for y in table.elements_upto(rx) {
            let ry = rx - table.length(y);
            let xy = table.multiply(x, y)?;
            for z in table.elements_upto(ry) {
                if triples == TRIPLE_BUDGET {
                    break 'triples;
                }
                triples += 1;
                let lhs = table.multiply(xy, z)?;
                let rhs = table.multiply(x, table.multiply(y, z)?)?;
                if lhs != rhs {
                    bad_triple = Some(names(&table, [x, y, z]));
                    break 'triples;
                }
            }
        }
    }
    report.check(
        "associativity",
        bad_triple.is_none(),
        json!({"triples": triples, "witness": bad_triple}),
    );

    if table.presentation().rank() > 0 {
        let arc = Arc::new(table.clone());
        let phi = ControlledMap::length_map(arc, bound)?;
        let fibers: Vec<usize> = phi
            .target()
            .elements()
            .map(|q| phi.fiber(q).map(|f| f.len()))
            .collect::<Result<_>>()?;
        report.check("length_map_fibers", fibers == table.counts(), fibers);
    }
    Ok(())
}

fn run_divisors(config: &RunConfig, opts: ExecOptions, report: &mut Report) -> Result<()> {
    let pres = load_presentation(config)?;
    let bound = config.length.unwrap_or(8);
    let table = EnumerationTable::with_limit(pres, bound, opts.max_words)?;
    cancellation_check(report, &table);

    let elements: Vec<Element> = match &config.elements {
        Some(specs) => specs
            .iter()
            .map(|s| s.resolve(&table))
            .collect::<Result<_>>()?,
        None => table.elements().collect(),
    };

    let mut rows = Vec::new();
    let (mut bijection, mut contains, mut heredity) = (None, None, None);
    for &p in &elements {
        let r = right_divisors(&table, p);
        let l = left_divisors(&table, p);
        if r.len() != l.len() && bijection.is_none() {
            bijection = Some(table.format(p));
        }
        if !(r.contains(&table.identity()) && r.contains(&p) && l.contains(&table.identity()) && l.contains(&p))
            && contains.is_none()
        {
            contains = Some(table.format(p));
        }
        if heredity.is_none() {
            if let Some(&bad) = r.iter().find(|&&x| !right_divisors(&table, x).is_subset(&r)) {
                heredity = Some(format!("{} ∈ R_{}", table.format(bad), table.format(p)));
            }
        }
        rows.push(json!({
            "p": table.format(p),
            "right": names(&table, r.iter().copied()),
            "left": names(&table, l.iter().copied()),
            "right_size": r.len(),
            "left_size": l.len(),
        }));
    }
    report.table("divisors", rows);
    report.check("divisor_bijection", bijection.is_none(), bijection);
    report.check("divisors_contain_identity_and_self", contains.is_none(), contains);
    report.check("divisor_heredity", heredity.is_none(), heredity);

    if let Some(pairs) = &config.lcm {
        let mut out = Vec::new();
        for [p, q] in pairs {
            let (p, q) = (p.resolve(&table)?, q.resolve(&table)?);
            let entry = match right_lcm_check(&table, p, q, bound) {
                Ok(rep) => json!({"p": table.format(p), "q": table.format(q), "report": rep}),
                Err(Error::Inconclusive(why)) => {
                    json!({"p": table.format(p), "q": table.format(q), "report": {"verdict": "inconclusive", "reason": why}})
                }
                Err(e) => return Err(e),
            };
            out.push(entry);
        }
        report.table("lcm", out);
    }
    Ok(())
}

fn run_fdapprox(config: &RunConfig, opts: ExecOptions, report: &mut Report) -> Result<()> {
    let pres = load_presentation(config)?;
    let specs = config.finite_set.as_deref().unwrap_or_default();
    let m = specs
        .iter()
        .map(|s| s.length_hint(&pres))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .max()
        .unwrap_or(0);
    let bound = config.length.unwrap_or(m);
    let table = EnumerationTable::with_limit(pres, m + bound.max(m), opts.max_words)?;
    table.ensure_cancellative()?;
    let f: Vec<Element> = specs.iter().map(|s| s.resolve(&table)).collect::<Result<_>>()?;
    let y = build_y(&table, &f)?;

    report.table("F", names(&table, y.generators().iter().copied()));
    report.table("dim_Y", y.dim());
    report.table("basis_Y", names(&table, y.basis().iter().copied()));
    let sum_r: usize = y.generators().iter().map(|&p| right_divisors(&table, p).len()).sum();
    report.table("sum_divisor_sizes", sum_r);
    report.check("dim_bound", y.dim() <= sum_r, json!({"dim": y.dim(), "sum": sum_r}));

    let kernel = report.check_result("kernel_formula", kernel_set(&table, &f, bound), |k| {
        json!({"size": k.len()})
    })?;
    if let Some(k) = kernel {
        report.table("kernel_set", names(&table, k));
    }
    report.table("support_set", names(&table, support_set(&table, &y)));

    let mats: Vec<(Element, SparseOperator)> = table
        .elements_upto(bound)
        .map(|s| Ok((s, pi_f(&table, &y, s)?)))
        .collect::<Result<_>>()?;

    // coinvariance: λ_s* maps Y_F into itself
    let mut leak = None;
    'co: for s in table.elements_upto(bound) {
        let adj = lambda_adjoint(&table, s, y.max_len())?;
        for &r in y.basis() {
            if let Some(&(row, _)) = adj.column(r.index()).iter().find(|(row, _)| !y.contains(Element::from_index(*row))) {
                leak = Some(format!(
                    "λ_{}* e_{} = e_{}",
                    table.format(s),
                    table.format(r),
                    table.format(Element::from_index(row))
                ));
                break 'co;
            }
        }
    }
    report.check("adjoint_coinvariance", leak.is_none(), leak);

    // multiplicativity π(s)π(t) = π(st)
    let mut products = 0usize;
    let mut bad = None;
    'mul: for (s, ps) in &mats {
        for (t, pt) in &mats {
            if table.length(*s) + table.length(*t) > bound {
                continue;
            }
            products += 1;
            let st = table.multiply(*s, *t)?;
            if ps.compose(pt)? != mats[st.index()].1 {
                bad = Some(names(&table, [*s, *t]));
                break 'mul;
            }
        }
    }
    report.check("multiplicativity", bad.is_none(), json!({"pairs": products, "witness": bad}));

    let mut worst: f64 = 0.0;
    for (_, mat) in &mats {
        worst = worst.max(operator_norm_with(mat, norm_opts(opts))?);
    }
    report.check("contractivity", worst <= 1.0 + 1e-12, json!({"max_norm": worst}));

    // nesting: π_{p} is the compression of π_F for each p ∈ F
    let mut nest_bad = None;
    for &p in y.generators() {
        let small = build_y(&table, &[p])?;
        let pos: Vec<usize> = small
            .basis()
            .iter()
            .map(|&e| y.position(e).expect("Y_{p} ⊆ Y_F"))
            .collect();
        for (s, mat) in &mats {
            let inner = mat.submatrix(&pos, &pos, small.space(), small.space())?;
            if inner != pi_f(&table, &small, *s)? {
                nest_bad = Some(names(&table, [p, *s]));
            }
        }
    }
    report.check("nesting", nest_bad.is_none(), nest_bad);

    // stabilization for every pair with |s| + |q| ≤ max |F|
    let mut certs = 0usize;
    let mut stab_fail = None;
    'stab: for s in table.elements_upto(m) {
        for q in table.elements_upto(m - table.length(s)) {
            match stabilization_index(&table, s, q) {
                Ok(_) => certs += 1,
                Err(Error::CheckFailed { name, witness }) => {
                    stab_fail = Some(format!("{name}: {witness}"));
                    break 'stab;
                }
                Err(e) => return Err(e),
            }
        }
    }
    report.check(
        "stabilization",
        stab_fail.is_none(),
        json!({"pairs": certs, "witness": stab_fail}),
    );
    Ok(())
}

fn build_map(
    config: &RunConfig,
    pres: MonoidPresentation,
    lp: usize,
    lq: usize,
    f: &[ElementSpec],
    opts: ExecOptions,
) -> Result<ControlledMap> {
    let choice = config
        .map
        .as_ref()
        .ok_or_else(|| Error::InvalidParams("missing map".into()))?;
    match choice {
        MapChoice::Named(name) => {
            // generator images have length 1 for both named maps
            let max_f = max_len(f, &crate::monoid::nat(pres.rank().max(1))?)?;
            let sp = (lp + 1).max(max_f);
            let tq = (lq + lp + 1).max(sp).max(max_f);
            let source = Arc::new(EnumerationTable::with_limit(pres, sp, opts.max_words)?);
            match name.as_str() {
                "length" => ControlledMap::length_map(source, tq),
                "abelianization" => ControlledMap::abelianization(source, tq),
                other => Err(Error::InvalidParams(format!("unknown map `{other}`"))),
            }
        }
        MapChoice::Custom { target, images } => {
            let tpres = target.load()?;
            let lens = images
                .iter()
                .map(|w| Ok(tpres.parse_word(w)?.len()))
                .collect::<Result<Vec<_>>>()?;
            let m = lens.iter().copied().max().unwrap_or(0);
            let mn = lens.iter().copied().min().unwrap_or(0);
            let max_f = max_len(f, &tpres)?;
            let sp = (lp + 1).max(max_f.checked_div(mn).unwrap_or(0));
            let tq = (lq + (lp + 1) * m).max(sp * m).max(max_f);
            let source = Arc::new(EnumerationTable::with_limit(pres, sp, opts.max_words)?);
            let ttable = Arc::new(EnumerationTable::with_limit(tpres, tq, opts.max_words)?);
            let imgs = images
                .iter()
                .map(|w| ttable.parse_element(w))
                .collect::<Result<Vec<_>>>()?;
            ControlledMap::new(source, ttable, imgs)
        }
    }
}

fn max_len(specs: &[ElementSpec], pres: &MonoidPresentation) -> Result<usize> {
    Ok(specs
        .iter()
        .map(|s| s.length_hint(pres))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .max()
        .unwrap_or(0))
}

/// Deterministic test elements: every monomial of the ball, then a few
/// combinations with distinct complex coefficients.
fn sample_elements(table: &EnumerationTable, radius: usize) -> Vec<AlgebraElement> {
    let ball: Vec<Element> = table.elements_upto(radius).collect();
    let mut out: Vec<AlgebraElement> = ball.iter().map(|&p| AlgebraElement::monomial(p)).collect();
    for k in 1..=8usize {
        out.push(AlgebraElement::from_terms(ball.iter().enumerate().filter(|(i, _)| (i + k) % 3 != 0).map(
            |(i, &p)| (p, Complex64::new((i * k % 7) as f64 - 3.0, (i + 2 * k) as f64 % 5.0)),
        )));
    }
    out.push(AlgebraElement::zero());
    out
}

fn run_coaction(config: &RunConfig, opts: ExecOptions, report: &mut Report) -> Result<()> {
    let pres = load_presentation(config)?;
    let lp = config.length_p.unwrap_or(3);
    let lq = config.length_q.unwrap_or(4);
    let f_specs = config.finite_set.clone().unwrap_or_default();
    let map = build_map(config, pres, lp, lq, &f_specs, opts)?;
    let (src, tgt) = (map.source().clone(), map.target().clone());
    cancellation_check(report, &src);
    src.ensure_cancellative()?;
    tgt.ensure_cancellative()?;

    report.table("map", map.kind());
    report.table(
        "generator_images",
        map.generator_images().iter().map(|&e| tgt.format(e)).collect::<Vec<_>>(),
    );

    // homomorphism on cached products
    let mut hom_bad = None;
    'hom: for x in src.elements() {
        for y in src.elements_upto(src.bound() - src.length(x)) {
            let xy = src.multiply(x, y)?;
            let (fx, fy, fxy) = (map.apply(x)?, map.apply(y)?, map.apply(xy)?);
            if tgt.multiply(fx, fy)? != fxy {
                hom_bad = Some(names(&src, [x, y]));
                break 'hom;
            }
        }
    }
    report.check("homomorphism", hom_bad.is_none(), hom_bad);

    let spec = CoactionSpec::new(map.clone());
    report.check(
        "finite_fibers",
        spec.is_ok(),
        spec.as_ref().err().map(|e| e.to_string()),
    );

    let fell = fell_intertwiner(&map, lp, lq)?;
    report.check("fell_isometry", fell.isometry, json!({"dim": fell.w.ncols()}));
    report.check(
        "fell_intertwining",
        fell.intertwines.values().all(|&ok| ok),
        &fell.intertwines,
    );
    report.table("fell", &fell);

    let Ok(spec) = spec else {
        return Ok(());
    };
    let m = map.max_image_len();

    // W(a ⊗ I) = δ(a) W on a combination of the generators and the identity
    if !src.generators().is_empty() {
        let a = AlgebraElement::from_terms(
            std::iter::once((src.identity(), Complex64::new(1.0, 0.0))).chain(
                src.generators()
                    .into_iter()
                    .enumerate()
                    .map(|(i, g)| (g, Complex64::new(i as f64 + 1.0, 0.5))),
            ),
        );
        let w = fell_w(&map, lp, lq)?;
        let w_up = fell_w(&map, lp + 1, lq)?;
        let id_q = SparseOperator::identity(graded_space(&tgt, lq)?);
        let mut a_op = SparseOperator::zero(graded_space(&src, lp)?, graded_space(&src, lp + 1)?);
        for (p, c) in a.terms() {
            a_op = a_op.add(&crate::linrep::lambda_into(&src, p, lp, lp + 1)?.scale(c))?;
        }
        let lhs = w_up.compose(&a_op.kron(&id_q))?;
        let rhs = delta_apply_into(&spec, &a, (lp, lq + lp * m), (lp + 1, lq + (lp + 1) * m))?.compose(&w)?;
        report.check("isometry_transfer", lhs == rhs, json!({"terms": a.len()}));
    }

    // δ(λ_g λ_h) = δ(λ_g) δ(λ_h)
    if lp >= 1 {
        let base = (lp - 1, lq);
        let mut bad = None;
        for g in src.generators() {
            for h in src.generators() {
                let (ag, ah) = (AlgebraElement::monomial(g), AlgebraElement::monomial(h));
                let gh = ag.multiply(&ah, &src)?;
                let mid = (base.0 + 1, base.1 + m);
                let top = (base.0 + 2, base.1 + 2 * m);
                let lhs = delta_apply_into(&spec, &gh, base, top)?;
                let rhs = delta_apply_into(&spec, &ag, mid, top)?
                    .compose(&delta_apply_into(&spec, &ah, base, mid)?)?;
                if lhs != rhs {
                    bad = Some(names(&src, [g, h]));
                }
            }
        }
        report.check("delta_multiplicative", bad.is_none(), bad);
    }

    // spectral decomposition and the character
    let samples = sample_elements(&src, lp.min(src.bound()));
    let mut recon_bad = None;
    let mut chi_bad = None;
    let mut disjoint_bad = None;
    for (i, a) in samples.iter().enumerate() {
        let d = spectral_decompose(a, &map)?;
        if d.reconstruct() != *a {
            recon_bad.get_or_insert(i);
        }
        let mut seen = BTreeSet::new();
        for part in d.parts.values() {
            if !part.support().all(|p| seen.insert(p)) {
                disjoint_bad.get_or_insert(i);
            }
        }
        if id_tensor_character(a, &map)? != *a {
            chi_bad.get_or_insert(i);
        }
    }
    report.check(
        "spectral_reconstruction",
        recon_bad.is_none(),
        json!({"elements": samples.len(), "witness": recon_bad}),
    );
    report.check("spectral_supports_disjoint", disjoint_bad.is_none(), disjoint_bad);
    report.check(
        "character_reconstruction",
        chi_bad.is_none(),
        json!({"elements": samples.len(), "witness": chi_bad}),
    );

    // spectral subspace dimensions over the part of Q reachable from the ball
    let mut dims = Vec::new();
    for q in tgt.elements_upto(lp * map.min_image_len()) {
        let fib = map.fiber(q)?;
        dims.push(json!({"q": tgt.format(q), "dim": fib.len()}));
    }
    report.table("spectral_dims", dims);

    if !f_specs.is_empty() {
        let f: Vec<Element> = f_specs.iter().map(|s| s.resolve(&tgt)).collect::<Result<_>>()?;
        let set = qf_spanning_set(&spec, &f)?;
        let monotone = f
            .iter()
            .map(|&q| qf_spanning_set(&spec, &[q]).map(|s| s.is_subset(&set)))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .all(|b| b);
        report.table("qf_spanning_set", names(&src, set.iter().copied()));
        report.table("qf_dimension_bound", set.len());
        report.check("qf_monotone", monotone, json!({"size": set.len()}));
    }
    Ok(())
}

fn grid_sup_norm(phi: &Polynomial, points: usize) -> f64 {
    (0..points)
        .map(|k| {
            let z = root_of_unity(k as i64, points as u32);
            phi.eval(&[z]).norm()
        })
        .fold(0.0, f64::max)
}

/// Degrees at which the monotone ladder of lower bounds is reported.
fn ladder(top: usize) -> Vec<usize> {
    let mut v: Vec<usize> = [top / 20, top / 4, top / 2, top]
        .into_iter()
        .filter(|&d| d > 0 || top == 0)
        .collect();
    v.dedup();
    v
}

fn run_funcalg(config: &RunConfig, opts: ExecOptions, report: &mut Report) -> Result<()> {
    let d = config.d.unwrap_or(1);
    let kernel = config
        .kernel
        .as_ref()
        .ok_or_else(|| Error::InvalidParams("missing kernel".into()))?
        .build(d)?;
    let phi = config
        .phi
        .as_ref()
        .ok_or_else(|| Error::InvalidParams("missing phi".into()))?
        .build(d)?;
    let top = config.degree.unwrap_or(8);
    let nopts = norm_opts(opts);

    report.table("kernel", kernel.name());
    report.table("phi", phi.to_string());

    let steps = ladder(top);
    let mut values = Vec::new();
    for &deg in &steps {
        values.push(multiplier_norm_lower_with(&kernel, &phi, deg, nopts)?);
    }
    let norm = *values.last().unwrap_or(&0.0);
    report.table("norm_lower", norm);
    report.table(
        "norm_ladder",
        steps.iter().zip(&values).map(|(d, v)| json!({"D": d, "norm": v})).collect::<Vec<_>>(),
    );
    let monotone = values.windows(2).all(|w| w[0] <= w[1] + opts.norm_tol * w[1].max(1.0));
    report.check("norm_monotone", monotone, &values);

    if d == 1 && matches!(kernel.family(), KernelFamily::Hardy) {
        let sup = grid_sup_norm(&phi, 1 << 14);
        report.table("sup_norm_grid", sup);
        report.table("sup_gap", sup - norm);
        report.check(
            "lower_bound_below_sup",
            norm <= sup + 1e-9,
            json!({"norm": norm, "sup": sup}),
        );
    }

    let decomposition = phi.homogeneous_decompose();
    let recon = decomposition
        .values()
        .fold(Polynomial::zero(d), |acc, p| acc.add(p));
    report.check("reconstruction", recon == phi, decomposition.len());

    let f_degrees: Vec<usize> = config
        .finite_set
        .as_deref()
        .unwrap_or_default()
        .iter()
        .map(|s| match s {
            ElementSpec::Power(n) => Ok(*n as usize),
            _ => Err(Error::InvalidParams("funcalg F must list degrees".into())),
        })
        .collect::<Result<_>>()?;
    let f_degrees = if f_degrees.is_empty() {
        vec![phi.degree()]
    } else {
        f_degrees
    };
    let nc = n_coaction(&phi, &f_degrees);
    report.table(
        "n_coaction",
        nc.parts
            .iter()
            .map(|(n, p)| json!({"n": n, "part": p.to_string()}))
            .collect::<Vec<_>>(),
    );
    report.table("quotient_dim", nc.quotient_dim);

    let mono_top = top.min(3);
    let mut norms = Vec::new();
    for n in 0..=mono_top {
        for a in monomials_of_degree(d, n) {
            norms.push(json!({"alpha": a.0, "norm": monomial_norm(&kernel, &a)?}));
        }
    }
    report.table("monomial_norms", norms);

    let zetas: Vec<Complex64> = match &config.zetas {
        Some(z) => z.iter().map(|[re, im]| Complex64::new(*re, *im)).collect(),
        None => (0..8).map(|k| root_of_unity(k, 8)).collect(),
    };
    // secondary checks stay inside the coefficients a custom kernel supplies
    let room = kernel.max_degree().unwrap_or(usize::MAX).saturating_sub(phi.degree());
    let cov_deg = top.min(8).min(room);
    let mut cov_worst: f64 = 0.0;
    let mut spectral_ok = true;
    let mut unitary_worst: f64 = 0.0;
    for &zeta in &zetas {
        let lhs = conjugated_mult_operator(&kernel, &phi, zeta, cov_deg)?;
        let rhs = mult_operator(&kernel, &phi.circle_action(zeta.conj())?, cov_deg)?;
        cov_worst = cov_worst.max(lhs.max_abs_diff(&rhs)?);

        let g = circle_operator(&kernel, zeta, cov_deg)?;
        let gg = g.adjoint().compose(&g)?;
        unitary_worst = unitary_worst.max(gg.max_abs_diff(&SparseOperator::identity(g.domain().clone()))?);

        for (n, part) in &decomposition {
            let rotated = part.circle_action(zeta)?;
            let expect = Polynomial::from_terms(
                d,
                part.terms().map(|(a, c)| (a.clone(), c * zeta.powu(*n as u32))),
            )?;
            spectral_ok &= rotated.max_abs_diff(&expect) <= FLOAT_TOL;
        }
    }
    report.check(
        "circle_covariance",
        cov_worst <= FLOAT_TOL,
        json!({"max_abs_diff": cov_worst, "zetas": zetas.len(), "D": cov_deg}),
    );
    report.check("circle_unitary", unitary_worst <= FLOAT_TOL, json!({"max_abs_diff": unitary_worst}));
    report.check("grading_by_degree", spectral_ok, decomposition.keys().collect::<Vec<_>>());

    let mul_deg = top.min(6).min(room.saturating_sub(phi.degree()));
    let sq = phi.mul(&phi);
    let prod = mult_operator(&kernel, &phi, mul_deg + phi.degree())?
        .compose(&mult_operator(&kernel, &phi, mul_deg)?)?;
    let direct = mult_operator(&kernel, &sq, mul_deg)?;
    let scale = direct.triplets().map(|(_, _, v)| v.norm()).fold(1.0, f64::max);
    let diff = prod.max_abs_diff(&direct)?;
    report.check(
        "multiplicativity",
        diff <= FLOAT_TOL * scale,
        json!({"max_abs_diff": diff, "D": mul_deg}),
    );
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ladder_degrees() {
        assert_eq!(ladder(200), [10, 50, 100, 200]);
        assert_eq!(ladder(3), [1, 3]);
        assert_eq!(ladder(0), [0]);
    }

    #[test]
    fn status_mapping() {
        assert_eq!(error_status(&Error::ResourceLimit("x".into())), 3);
        assert_eq!(error_status(&Error::InvalidParams("x".into())), 2);
        assert_eq!(
            error_status(&Error::CheckFailed {
                name: "n".into(),
                witness: "w".into()
            }),
            1
        );
    }
}
