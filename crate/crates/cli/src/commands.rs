use std::fmt::Write as _;
use std::process::Command as Process;

use serde_json::{json, Value};
use slcc_core::acceptance::{self, AcceptanceReport, CriterionResult, Fault, DETERMINISM};
use slcc_core::charclass::{complement_borel, verify_top_class, Convention, SplitBundle};
use slcc_core::groebner::{ideal_equal, member_with_cofactors, Budget, GroebnerBasis, GroebnerError, Ideal, MonomialOrder};
use slcc_core::polyring::{PolyError, Ring, RingSpec, Substitution, ZPoly};
use slcc_core::presentations::{
    self, rank_table, verify_presentation, Parity, Presentation, PresentationError, VarietyDescriptor,
};
use slcc_core::report::Check;
use slcc_core::spanning;
use slcc_core::symfunc::{self, g_poly, verify_g_substitution, verify_generating_function, verify_h_peel, verify_h_split};
use slcc_core::weyl::{self, GroupTag, WeylError};

use crate::{
    AcceptanceArgs, ClassArgs, ClassCommand, GroupArgs, IdealArgs, Kind, OrderArg, PolyArgs, PolyOp, PresentArgs, PresentParams,
    RankArgs, SpanArgs, SymfuncArgs, SymfuncCommand, VerifyArgs, VerifyCommand, WeylArgs,
};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Budget(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Budget(_) => 3,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Budget(_) => "budget",
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Budget(m) => f.write_str(m),
        }
    }
}

impl From<PolyError> for CliError {
    fn from(e: PolyError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<GroebnerError> for CliError {
    fn from(e: GroebnerError) -> Self {
        match e {
            GroebnerError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<WeylError> for CliError {
    fn from(e: WeylError) -> Self {
        match e {
            WeylError::Groebner(g) => g.into(),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<PresentationError> for CliError {
    fn from(e: PresentationError) -> Self {
        match e {
            PresentationError::Groebner(g) => g.into(),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

pub struct Output {
    pub text: String,
    pub json: Value,
    pub pass: bool,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Output { text, json, pass: true }
    }
}

fn ensure_newline(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

fn parse_ring(text: &str) -> Result<Ring, CliError> {
    Ok(RingSpec::parse(text)?)
}

fn parse_group(g: &GroupArgs) -> Result<(GroupTag, usize), CliError> {
    let tag: GroupTag = g.group.parse()?;
    if g.n == 0 {
        return Err(WeylError::ZeroRank.into());
    }
    Ok((tag, g.n))
}

fn strings<T: ToString>(xs: &[T]) -> Vec<String> {
    xs.iter().map(ToString::to_string).collect()
}

pub fn poly(a: &PolyArgs) -> Result<Output, CliError> {
    let ring = parse_ring(&a.ring)?;
    let mut inputs = a.exprs.iter().map(|e| ZPoly::parse(e, &ring)).collect::<Result<Vec<_>, _>>()?;
    if !a.substitutions.is_empty() {
        let mut subst = Substitution::new(&ring, &ring);
        for s in &a.substitutions {
            let (name, expr) =
                s.split_once('=').ok_or_else(|| CliError::Usage(format!("substitution {s:?} is not name=expr")))?;
            subst = subst.set(name.trim(), ZPoly::parse(expr, &ring)?)?;
        }
        let subst = subst.rest_by_name()?;
        inputs = inputs.iter().map(|p| p.substitute(&subst)).collect::<Result<_, _>>()?;
    }
    let results: Vec<ZPoly> = match a.op {
        PolyOp::Normalize => inputs,
        PolyOp::Add => vec![inputs.iter().fold(ZPoly::zero(&ring), |acc, p| &acc + p)],
        PolyOp::Mul => vec![inputs.iter().fold(ZPoly::one(&ring), |acc, p| &acc * p)],
        PolyOp::Sub => {
            let (first, rest) = inputs.split_first().expect("at least one input");
            vec![rest.iter().fold(first.clone(), |acc, p| &acc - p)]
        }
    };
    let mut text = String::new();
    let mut items = Vec::new();
    for p in &results {
        let degree = p.max_degree();
        writeln!(text, "{p}").unwrap();
        items.push(json!({
            "poly": p.to_string(),
            "homogeneous": p.is_homogeneous(),
            "degree": degree,
            "terms": p.len(),
        }));
    }
    Ok(Output::ok(text, json!({ "ring": ring.to_string(), "results": items })))
}

pub fn symfunc(a: &SymfuncArgs) -> Result<Output, CliError> {
    match &a.command {
        SymfuncCommand::Elementary(s) | SymfuncCommand::Complete(s) => {
            let ring = RingSpec::indexed("x", s.vars, 1)?;
            let names: Vec<String> = (1..=s.vars).map(|i| format!("x{i}")).collect();
            let refs: Vec<&str> = names.iter().map(String::as_str).collect();
            let (label, p) = match &a.command {
                SymfuncCommand::Elementary(_) => ("sigma", symfunc::elementary(s.i, &ring, &refs)?),
                _ => ("h", symfunc::complete(s.i, &ring, &refs)?),
            };
            let text = format!("{label}_{}(x1..x{}) = {p}\n", s.i, s.vars);
            Ok(Output::ok(text, json!({ "function": label, "i": s.i, "vars": s.vars, "poly": p.to_string() })))
        }
        SymfuncCommand::G { i, m } => {
            if *m == 0 {
                return Err(CliError::Usage("g_i needs m >= 1".into()));
            }
            let g = g_poly(*i, *m);
            let text = format!("g_{i}(sigma1..sigma{m}) = {g}\n");
            Ok(Output::ok(text, json!({ "i": i, "m": m, "poly": g.to_string(), "ring": g.ring().to_string() })))
        }
        SymfuncCommand::Verify { max_i, max_vars } => {
            let mut checks = Vec::new();
            for v in 1..=*max_vars {
                checks.push(Check::new(format!("generating function, {v} variables"), verify_generating_function(v, *max_i)));
                checks.push(Check::new(format!("g substitution, m={v}"), (0..=*max_i).all(|i| verify_g_substitution(i, v))));
                checks.push(Check::new(format!("h split, l={v}"), (0..=*max_i).all(|k| verify_h_split(k, v))));
                checks.push(Check::new(format!("h peel, n={v}"), (1..=*max_i).all(|i| verify_h_peel(i, v))));
            }
            Ok(checks_output("symmetric function identities", checks))
        }
    }
}

fn checks_output(title: &str, checks: Vec<Check>) -> Output {
    let pass = checks.iter().all(|c| c.pass);
    let mut text = format!("{title}\n");
    for c in &checks {
        write!(text, "  [{}] {}", if c.pass { "pass" } else { "FAIL" }, c.name).unwrap();
        if let Some(d) = &c.detail {
            write!(text, " ({d})").unwrap();
        }
        text.push('\n');
    }
    text.push_str(if pass { "PASS\n" } else { "FAIL\n" });
    Output { text, json: json!({ "title": title, "checks": checks, "pass": pass }), pass }
}

pub fn weyl(a: &WeylArgs) -> Result<Output, CliError> {
    let (tag, n) = parse_group(&a.group)?;
    let order = weyl::group_order(tag, n);
    let inv = weyl::invariant_generators(tag, n)?;
    let gens: Vec<Value> = weyl::generators(tag, n).iter().map(|g| json!({ "perm": g.perm(), "signs": g.signs() })).collect();
    let mut text = format!("W({tag}{n}): order {order}, {} generators\n", gens.len());
    for (name, p) in &inv.gens {
        writeln!(text, "  {name} = {p}").unwrap();
    }
    let mut out = json!({
        "group": tag.to_string(),
        "n": n,
        "order": order.to_string(),
        "generators": gens,
        "invariants": inv.gens.iter().map(|(name, p)| json!({ "name": name, "poly": p.to_string() })).collect::<Vec<_>>(),
    });
    if let Some(expr) = &a.check_invariant {
        let p = ZPoly::parse(expr, &inv.ring)?;
        let invariant = weyl::is_invariant(&p, tag, n)?;
        writeln!(text, "{p} is {}invariant", if invariant { "" } else { "not " }).unwrap();
        out["invariant"] = json!(invariant);
    }
    Ok(Output::ok(text, out))
}

fn witness_output(tag: GroupTag, n: usize) -> Result<Output, CliError> {
    let w = weyl::witness(tag, n)?;
    let ok = w.verify() && w.degrees_ok();
    let text = format!("{}\nexpansion check: {}\n", w.identity_text(), if ok { "ok" } else { "FAILED" });
    let cofactors: Vec<Value> = w
        .cofactors
        .iter()
        .zip(&w.generators)
        .enumerate()
        .map(|(i, (c, (g, _)))| json!({ "name": format!("{}{}", w.cofactor_name(), i + 1), "generator": g, "cofactor": c.to_string() }))
        .collect();
    Ok(Output {
        text,
        json: json!({
            "group": tag.to_string(),
            "n": n,
            "target": w.target.to_string(),
            "identity": w.identity_text(),
            "cofactors": cofactors,
            "method": w.method,
            "expansion_ok": w.verify(),
            "degrees_ok": w.degrees_ok(),
        }),
        pass: ok,
    })
}

pub fn witness(a: &GroupArgs) -> Result<Output, CliError> {
    let (tag, n) = parse_group(a)?;
    witness_output(tag, n)
}

pub fn span(a: &SpanArgs) -> Result<Output, CliError> {
    let (tag, n) = parse_group(&a.group)?;
    let basis = spanning::basis(tag, n)?;
    let names: Vec<String> = basis.monomials.iter().map(|m| m.display(&basis.ring).to_string()).collect();
    let Some(expr) = &a.poly else {
        let text = format!("{} basis monomials over the {tag}{n} invariants:\n{}\n", names.len(), names.join(", "));
        return Ok(Output::ok(text, json!({ "group": tag.to_string(), "n": n, "size": names.len(), "basis": names })));
    };
    let p = ZPoly::parse(expr, &weyl::e_ring(n))?;
    let d = spanning::reduce(&p, tag, n)?;
    let ok = d.verify();
    let mut text = format!("{p} =\n");
    let mut terms = Vec::new();
    for (m, c) in &d.terms {
        let mono = m.display(&basis.ring).to_string();
        writeln!(text, "  ({c}) * {mono}").unwrap();
        terms.push(json!({ "basis": mono, "coefficient": c.to_string() }));
    }
    writeln!(text, "expansion check: {}", if ok { "ok" } else { "FAILED" }).unwrap();
    Ok(Output {
        text,
        json: json!({
            "group": tag.to_string(),
            "n": n,
            "poly": p.to_string(),
            "coefficient_ring": d.coefficient_ring.to_string(),
            "terms": terms,
            "expansion_ok": ok,
        }),
        pass: ok,
    })
}

pub fn ideal(a: &IdealArgs) -> Result<Output, CliError> {
    let ring = parse_ring(&a.ring)?;
    let parse_all = |xs: &[String]| xs.iter().map(|g| ZPoly::parse(g, &ring)).collect::<Result<Vec<_>, _>>();
    let ideal = Ideal::new(&ring, parse_all(&a.generators)?)?;
    let order = match a.order {
        OrderArg::Grevlex => MonomialOrder::Grevlex,
        OrderArg::Lex => MonomialOrder::Lex,
    };
    let budget = Budget::from_env();
    let gb = GroebnerBasis::compute_with(&ideal, order, budget, false)?;
    let basis = strings(&gb.basis_primitive());
    let mut text = format!("groebner basis ({} elements):\n", basis.len());
    for b in &basis {
        writeln!(text, "  {b}").unwrap();
    }
    let mut out = json!({
        "ring": ring.to_string(),
        "order": order,
        "generators": strings(ideal.generators()),
        "groebner_basis": basis,
        "dimension": gb.quotient_dimension().map(|d| d.to_string()),
    });
    if let Some(d) = gb.quotient_dimension() {
        writeln!(text, "quotient dimension: {d}").unwrap();
    }
    if let Some(expr) = &a.reduce {
        let nf = gb.normal_form(&ZPoly::parse(expr, &ring)?);
        writeln!(text, "normal form: {nf}").unwrap();
        out["normal_form"] = json!(nf.to_string());
    }
    if let Some(expr) = &a.member {
        let p = ZPoly::parse(expr, &ring)?;
        let cofs = member_with_cofactors(&p, &ideal, budget)?;
        match &cofs {
            Some(c) => writeln!(text, "member: yes, cofactors [{}]", strings(c).join(", ")).unwrap(),
            None => writeln!(text, "member: no").unwrap(),
        }
        out["member"] = json!(cofs.is_some());
        out["cofactors"] = json!(cofs.map(|c| strings(&c)));
    }
    if let Some(max) = a.hilbert {
        let h = gb.quotient_hilbert(max);
        writeln!(text, "hilbert: {h}").unwrap();
        out["hilbert"] = json!(h.coeffs().iter().map(ToString::to_string).collect::<Vec<_>>());
    }
    if !a.equal.is_empty() {
        let other = Ideal::new(&ring, parse_all(&a.equal)?)?;
        let eq = ideal_equal(&ideal, &other, budget)?;
        writeln!(text, "ideals equal: {eq}").unwrap();
        out["equal"] = json!(eq);
    }
    Ok(Output::ok(text, out))
}

fn bundle(b: &crate::BundleArgs) -> Result<SplitBundle, CliError> {
    let ring = RingSpec::indexed("e", b.symbols, 2)?;
    let names: Vec<String> = (1..=b.symbols).map(|i| format!("e{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    SplitBundle::new(&ring, &refs, b.odd, b.orientation).map_err(|e| CliError::Usage(e.to_string()))
}

fn series_output(label: &str, coefficients: &[ZPoly], extra: Value) -> Output {
    let mut text = String::new();
    for (i, c) in coefficients.iter().enumerate() {
        writeln!(text, "{label}_{i} = {c}").unwrap();
    }
    let mut out = json!({ "coefficients": strings(coefficients) });
    if let (Value::Object(o), Value::Object(e)) = (&mut out, extra) {
        o.extend(e);
    }
    Output::ok(text, out)
}

pub fn class(a: &ClassArgs) -> Result<Output, CliError> {
    match &a.command {
        ClassCommand::Euler(b) => {
            let bundle = bundle(b)?;
            let e = bundle.euler();
            Ok(Output::ok(format!("e = {e}\n"), json!({ "rank": bundle.rank(), "euler": e.to_string() })))
        }
        ClassCommand::Borel { bundle: b, order, eps } => {
            let bundle = bundle(b)?;
            let eps: Convention = eps.parse().map_err(|e: slcc_core::charclass::ClassError| CliError::Usage(e.to_string()))?;
            let s = bundle.total_borel(*order, eps);
            Ok(series_output("b", &s.coefficients, json!({ "rank": bundle.rank(), "eps": eps })))
        }
        ClassCommand::Complement { bundle: b, rank, order } => {
            let bundle = bundle(b)?;
            let s = complement_borel(&bundle, *rank, *order).map_err(|e| CliError::Usage(e.to_string()))?;
            Ok(series_output("b", &s.coefficients, json!({ "inner_rank": bundle.rank(), "total_rank": rank })))
        }
        ClassCommand::TopClass { bundle: b, order } => {
            let bundle = bundle(b)?;
            Ok(checks_output(&format!("top Borel class, rank {}", bundle.rank()), verify_top_class(&bundle, *order)))
        }
    }
}

fn need(v: Option<usize>, name: &str) -> Result<usize, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("--{name} is required")))
}

fn parity(p: &PresentParams) -> Result<Parity, CliError> {
    Ok(p.parity.as_deref().ok_or_else(|| CliError::Usage("--parity is required".into()))?.parse()?)
}

fn convention(p: &PresentParams) -> Result<Option<Convention>, CliError> {
    p.eps.as_deref().map(|e| e.parse::<Convention>().map_err(|e| CliError::Usage(e.to_string()))).transpose()
}

fn descriptor(kind: Kind, p: &PresentParams) -> Result<VarietyDescriptor, CliError> {
    use VarietyDescriptor as V;
    Ok(match kind {
        Kind::Sgr2 => V::Sgr2 { n: need(p.n, "n")?, parity: parity(p)? },
        Kind::Sgr2Relative => V::Sgr2Relative { n: need(p.n, "n")?, parity: parity(p)? },
        Kind::PartialFlag => V::PartialFlag { m: need(p.m, "m")?, n: need(p.n, "n")?, parity: parity(p)? },
        Kind::PartialFlagAlt => V::PartialFlagAlt { m: need(p.m, "m")?, n: need(p.n, "n")?, parity: parity(p)? },
        Kind::MaxFlag => V::MaxFlag { ambient: need(p.ambient, "ambient")? },
        Kind::SgrEven => V::SgrEven { m: need(p.m, "m")?, n: need(p.n, "n")?, parity: parity(p)? },
        Kind::Bsl => V::Bsl { ambient: need(p.ambient, "ambient")? },
    })
}

fn build(kind: Kind, p: &PresentParams) -> Result<Presentation, CliError> {
    let desc = descriptor(kind, p)?;
    let eps = convention(p)?;
    Ok(match (desc, eps) {
        (VarietyDescriptor::Sgr2Relative { n, parity }, Some(eps)) => presentations::present_sgr2_relative_with(n, parity, eps)?,
        (VarietyDescriptor::SgrEven { m, n, parity }, Some(eps)) => presentations::present_sgr_even_with(m, n, parity, eps)?,
        (desc, _) => presentations::present(&desc)?,
    })
}

pub fn present(a: &PresentArgs) -> Result<Output, CliError> {
    let p = build(a.kind, &a.params)?;
    let generators = strings(p.generators());
    let basis = p.basis_text();
    let coefficient_vars: Vec<&str> = p.coefficient_vars.iter().map(|&i| p.ring.name(i)).collect();
    let mut text = format!(
        "{}\nring: {}\ngenerators: {}\nbasis ({}): {}\n",
        p.descriptor,
        p.ring,
        generators.join(", "),
        basis.len(),
        basis.join(", ")
    );
    if !coefficient_vars.is_empty() {
        writeln!(text, "coefficients: {}", coefficient_vars.join(", ")).unwrap();
    }
    if let Some(eps) = p.convention {
        writeln!(text, "convention: eps = {eps}").unwrap();
    }
    Ok(Output::ok(
        text,
        json!({
            "descriptor": p.descriptor,
            "ring": p.ring.to_string(),
            "generators": generators,
            "basis": basis,
            "coefficient_vars": coefficient_vars,
            "convention": p.convention,
        }),
    ))
}

pub fn rank(a: &RankArgs) -> Result<Output, CliError> {
    let desc = match (a.k, a.kind) {
        (Some(k), None) => VarietyDescriptor::Sgr { k, ambient: need(a.params.ambient, "ambient")? },
        (None, Some(kind)) => descriptor(kind, &a.params)?,
        _ => return Err(CliError::Usage("give exactly one of --k (with --ambient) or --kind".into())),
    };
    let r = rank_table(&desc)?;
    Ok(Output::ok(format!("{desc}: rank {r}\n"), json!({ "descriptor": desc, "name": desc.to_string(), "rank": r.to_string() })))
}

pub fn verify(a: &VerifyArgs) -> Result<Output, CliError> {
    match &a.command {
        VerifyCommand::Spanning { group, max_degree } => {
            let (tag, n) = parse_group(group)?;
            let r = spanning::verify_free(tag, n, *max_degree)?;
            let mut text = format!("{tag}{n}: basis of {} monomials, Hilbert identity to degree {max_degree}: ", r.basis_size);
            match r.first_mismatch {
                None => text.push_str("pass\n"),
                Some(d) => writeln!(text, "FAIL at degree {d}").unwrap(),
            }
            let pass = r.pass;
            Ok(Output { text, json: serde_json::to_value(&r).expect("serializable"), pass })
        }
        VerifyCommand::Presentation { kind, params, max_degree } => {
            let p = build(*kind, params)?;
            let r = verify_presentation(&p, *max_degree)?;
            let pass = r.pass;
            Ok(Output { text: ensure_newline(r.to_string()), json: serde_json::to_value(&r).expect("serializable"), pass })
        }
        VerifyCommand::Witness(g) => {
            let (tag, n) = parse_group(g)?;
            witness_output(tag, n)
        }
    }
}

/// Runs this binary twice on the in-process criteria and compares the bytes.
fn determinism(filter: Option<&str>, fault: Option<&str>) -> CriterionResult {
    let (id, name) = DETERMINISM;
    let all = acceptance::criteria();
    let mut inner: Vec<String> =
        all.iter().filter(|c| acceptance::matches_filter(c.id, c.name, filter)).map(|c| c.id.to_string()).collect();
    if inner.is_empty() {
        inner = all.iter().map(|c| c.id.to_string()).collect();
    }
    let run = || -> Result<Vec<u8>, String> {
        let exe = std::env::current_exe().map_err(|e| e.to_string())?;
        let mut cmd = Process::new(exe);
        cmd.args(["acceptance", "--format", "json", "--filter", &inner.join(",")]);
        if let Some(f) = fault {
            cmd.args(["--inject-fault", f]);
        }
        let out = cmd.output().map_err(|e| e.to_string())?;
        Ok(out.stdout)
    };
    let check = match (run(), run()) {
        (Ok(a), Ok(b)) => {
            Check::new("two runs are byte-identical", a == b && !a.is_empty()).with_detail(format!("{} bytes", a.len()))
        }
        (Err(e), _) | (_, Err(e)) => Check::new("two runs are byte-identical", false).with_detail(e),
    };
    CriterionResult::new(id, name, vec![check])
}

pub fn acceptance(a: &AcceptanceArgs) -> Result<Output, CliError> {
    let fault: Option<Fault> = a.inject_fault.as_deref().map(str::parse).transpose().map_err(CliError::Usage)?;
    let filter = a.filter.as_deref();
    let mut report: AcceptanceReport = acceptance::run(filter, fault);
    let (id, name) = DETERMINISM;
    if acceptance::matches_filter(id, name, filter) {
        report.push(determinism(filter, a.inject_fault.as_deref()));
    }
    if report.criteria.is_empty() {
        return Err(CliError::Usage(format!("filter {:?} selects no criteria", filter.unwrap_or(""))));
    }
    let pass = report.pass;
    Ok(Output { text: ensure_newline(report.to_string()), json: serde_json::to_value(&report).expect("serializable"), pass })
}
