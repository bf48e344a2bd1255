use serde_json::{json, Value};
use steenrod::arithmetic::reciprocity_scan;
use steenrod::duality::{alternation_criterion, linking_form, linking_form_seeded, stiefel_whitney, CheckStatus, TorsionForm};
use steenrod::ops::{bockstein, total_sq};
use steenrod::qz::Qz;
use steenrod::{cohomology, CoefficientRing, CohomologyClass, Complex, Error};

type Result<T> = std::result::Result<T, Error>;

fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn class_json(c: &CohomologyClass) -> Value {
    json!({ "degree": c.degree(), "ring": c.ring().to_string(), "coords": c.coords })
}

fn qz_json(q: Qz) -> Value {
    json!({ "num": q.num(), "den": q.den() })
}

fn degrees(k: &Complex, degree: Option<usize>) -> Result<Vec<usize>> {
    match degree {
        Some(d) if d > k.dim() => Err(Error::DegreeOutOfRange { degree: d, dim: k.dim() }),
        Some(d) => Ok(vec![d]),
        None => Ok((0..=k.dim()).collect()),
    }
}

fn group_text(ring: CoefficientRing, free: usize, torsion: &[u64]) -> String {
    let unit = match ring {
        CoefficientRing::Integers => "Z".to_string(),
        CoefficientRing::ModM(m) => format!("Z/{m}"),
    };
    let mut parts = Vec::new();
    match free {
        0 => {}
        1 => parts.push(unit),
        n => parts.push(format!("{unit}^{n}")),
    }
    parts.extend(torsion.iter().map(|t| format!("Z/{t}")));
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

pub fn homology(k: &Complex, ring: CoefficientRing, degree: Option<usize>, json: bool) -> Result<String> {
    let mut rows = Vec::new();
    let mut text = format!("{} (dim {}, f-vector {:?})\n", k.name(), k.dim(), k.f_vector());
    for d in degrees(k, degree)? {
        let b = cohomology(k, d, ring)?;
        let g = group_text(ring, b.free_rank, &b.torsion_invariants);
        text += &format!("H^{d}({}; {ring}) = {g}\n", k.name());
        rows.push(json!({ "degree": d, "free_rank": b.free_rank, "torsion": b.torsion_invariants, "group": g }));
    }
    if json {
        return Ok(render(&json!({
            "complex": k.name(),
            "ring": ring.to_string(),
            "dim": k.dim(),
            "f_vector": k.f_vector(),
            "euler_characteristic": k.euler_characteristic(),
            "cohomology": rows,
        })));
    }
    Ok(text)
}

pub fn steenrod(k: &Complex, degree: Option<usize>, json: bool) -> Result<String> {
    let z2 = CoefficientRing::Z2;
    let mut rows = Vec::new();
    let mut text = String::new();
    for r in degrees(k, degree)? {
        let b = cohomology(k, r, z2)?;
        for (i, x) in b.generators_of(k).iter().enumerate() {
            let sq = total_sq(x)?;
            let beta = if r < k.dim() { Some(bockstein(x)?) } else { None };
            for (t, s) in sq.iter().enumerate() {
                text += &format!("Sq^{t} x{r}_{i} = {:?} in H^{}\n", s.coords, r + t);
            }
            if let Some(bx) = &beta {
                text += &format!("beta x{r}_{i} = {:?} in H^{}\n", bx.coords, r + 1);
            }
            rows.push(json!({
                "degree": r,
                "generator": i,
                "squares": sq.iter().map(class_json).collect::<Vec<_>>(),
                "bockstein": beta.as_ref().map(class_json),
            }));
        }
    }
    if json {
        return Ok(render(&json!({ "complex": k.name(), "classes": rows })));
    }
    Ok(text)
}

/// Writes a graded mod-2 class as a sum of x_i, where x_i is the degree-i part.
fn total_text(parts: &[CohomologyClass]) -> String {
    let mut terms = Vec::new();
    for (i, c) in parts.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if i == 0 {
            terms.push("1".to_string());
        } else if c.coords.len() == 1 {
            terms.push(format!("x{i}"));
        } else {
            terms.push(format!("x{i}{:?}", c.coords));
        }
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

pub fn wu(k: &Complex, json: bool) -> Result<String> {
    let sw = stiefel_whitney(k)?;
    let mut text = format!(
        "{}: v = {}, w = {}, consistent = {}\n",
        k.name(),
        total_text(&sw.wu),
        total_text(&sw.sw),
        sw.consistent
    );
    let mut alternation = Value::Null;
    let orientable = k.orient()?.orientable;
    if k.dim() % 4 == 1 && orientable {
        let r = alternation_criterion(k)?;
        let verdict = if r.alternating_verdict { "alternating" } else { "non-alternating" };
        text += &format!(
            "integral Bockstein of v{} = {:?}; linking form {verdict}; cross check {}\n",
            (k.dim() - 1) / 2,
            r.middle_obstruction.coords,
            r.cross_check
        );
        alternation = json!({
            "obstruction": class_json(&r.middle_obstruction),
            "verdict": verdict,
            "gram_diagonal": r.form.diagonal().into_iter().map(qz_json).collect::<Vec<_>>(),
            "cross_check": r.cross_check,
        });
    }
    if json {
        return Ok(render(&json!({
            "complex": k.name(),
            "wu": sw.wu.iter().map(class_json).collect::<Vec<_>>(),
            "stiefel_whitney": sw.sw.iter().map(class_json).collect::<Vec<_>>(),
            "wu_text": total_text(&sw.wu),
            "stiefel_whitney_text": total_text(&sw.sw),
            "consistent": sw.consistent,
            "alternation": alternation,
        })));
    }
    Ok(text)
}

fn gram_text(f: &TorsionForm) -> String {
    let rows: Vec<String> =
        f.gram.iter().map(|r| format!("[{}]", r.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(", "))).collect();
    format!("[{}]", rows.join(", "))
}

pub fn linkform(k: &Complex, degree: Option<usize>, seed: Option<u64>, json: bool) -> Result<String> {
    let degree = degree.unwrap_or(k.dim().saturating_sub(1) / 2);
    let f = linking_form(k, degree)?;
    let seeded = match seed {
        Some(s) => Some(linking_form_seeded(k, degree, s)?.gram == f.gram),
        None => None,
    };
    if json {
        return Ok(render(&json!({
            "complex": k.name(),
            "degree": f.degree,
            "orders": f.orders(),
            "gram": f.gram.iter().map(|r| r.iter().map(|&q| qz_json(q)).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "skew_symmetric": f.is_skew_symmetric(),
            "symmetric": f.is_symmetric(),
            "nondegenerate": f.is_nondegenerate(),
            "alternating": f.is_alternating(),
            "seeded_gram_matches": seeded,
        })));
    }
    let mut text = format!("linking form on torsion of H^{}({}; Z), orders {:?}\n", f.degree, k.name(), f.orders());
    text += &format!("gram = {}\n", gram_text(&f));
    text += &format!(
        "skew-symmetric: {}, symmetric: {}, nondegenerate: {}, alternating: {}\n",
        f.is_skew_symmetric(),
        f.is_symmetric(),
        f.is_nondegenerate(),
        f.is_alternating()
    );
    if let Some(m) = seeded {
        text += &format!("seeded recomputation matches: {m}\n");
    }
    Ok(text)
}

fn status_str(s: &CheckStatus) -> &'static str {
    match s {
        CheckStatus::Pass => "pass",
        CheckStatus::Fail => "fail",
        CheckStatus::Skipped => "skipped",
    }
}

pub fn verify(k: &Complex, seed: u64, trials: usize, json: bool) -> Result<(String, bool)> {
    let r = steenrod::verify::verify(k, seed, trials)?;
    let pass = r.all_pass();
    if json {
        let checks: Vec<Value> = r
            .checks
            .iter()
            .map(|c| json!({ "name": c.name, "status": status_str(&c.status), "detail": c.detail }))
            .collect();
        let v = json!({
            "complex": r.complex,
            "dim": r.dim,
            "f_vector": r.f_vector,
            "seed": r.seed,
            "checks": checks,
            "verdict": r.verdict,
            "all_pass": pass,
        });
        return Ok((render(&v), pass));
    }
    let mut text = format!("{} (dim {}, f-vector {:?}, seed {})\n", r.complex, r.dim, r.f_vector, r.seed);
    for c in &r.checks {
        text += &format!("{:<32} {:<8} {}\n", c.name, status_str(&c.status), c.detail);
    }
    if let Some(v) = &r.verdict {
        text += &format!("verdict: {v}\n");
    }
    text += if pass { "all checks pass\n" } else { "some checks FAILED\n" };
    Ok((text, pass))
}

pub fn qr(bound: u64, json: bool) -> (String, bool) {
    let r = reciprocity_scan(bound);
    let pass = r.violations.is_empty() && r.oracle_disagreements.is_empty();
    let mut examples = r.violations.clone();
    examples.sort_unstable();
    examples.truncate(10);
    if json {
        let v = json!({
            "bound": bound,
            "pairs_checked": r.pairs_checked,
            "violations": r.violations.len(),
            "violation_examples": examples,
            "oracle_disagreements": r.oracle_disagreements.len(),
        });
        return (render(&v), pass);
    }
    let mut text = format!("{} violations among {} prime pairs below {bound}\n", r.violations.len(), r.pairs_checked);
    if !examples.is_empty() {
        text += &format!("first violations: {examples:?}\n");
    }
    text += &format!("oracle disagreements: {}\n", r.oracle_disagreements.len());
    (text, pass)
}
