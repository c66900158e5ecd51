//! One function per subcommand, each returning the full report value.

use std::path::Path;

use kirwan_core::cohomology::StratumTerm;
use kirwan_core::{
    classify_support, dominant_representative, epsilon_window, face_data, format_rational,
    in_sweep_cone, index_set, load_action, parse_rational, perfection_certificate,
    quotient_betti, quotient_family, semistable_series, serialize_action, strata_partition,
    unstable_quotient, CohomologyError, EpsilonWindow, ParabolicData, PoincareSeries,
    Polynomial, QuotientError, QuotientReport, RationalVector, RootDatum, StabilityClass,
    StratumIndex, SupportSet, WeightSystem, Q,
};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::error::CliError;
use crate::plot;
use crate::BetaChoice;

struct Input {
    ws: WeightSystem,
    rd: Option<RootDatum>,
    digest: String,
}

fn load(path: &Path) -> Result<Input, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::parse(format!("{}: {e}", path.display())))?;
    let (ws, rd) = load_action(&text).map_err(|e| CliError::Input(e.to_string()))?;
    let canonical = serialize_action(&ws, rd.as_ref());
    let digest = Sha256::digest(canonical.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect();
    Ok(Input { ws, rd, digest })
}

fn report(command: &str, input: &Input, payload: Value) -> Value {
    json!({
        "command": command,
        "input_digest": input.digest,
        "payload": payload,
        "version": env!("CARGO_PKG_VERSION"),
    })
}

pub fn rational(x: &Q) -> Value {
    Value::String(format_rational(x))
}

pub fn vector(v: &RationalVector) -> Value {
    Value::Array(v.coords().iter().map(rational).collect())
}

fn vectors(vs: &[RationalVector]) -> Value {
    Value::Array(vs.iter().map(vector).collect())
}

fn support(s: &SupportSet) -> Value {
    json!(s.indices())
}

fn polynomial(p: &Polynomial) -> Value {
    json!({ "coeffs": p.coeffs(), "text": p.to_string() })
}

fn series(s: &PoincareSeries) -> Value {
    json!({
        "numerator": s.numerator.coeffs(),
        "denom_power": s.denom_power,
        "text": s.to_string(),
    })
}

fn stratum(pos: usize, si: &StratumIndex) -> Value {
    json!({
        "index": pos,
        "beta": vector(&si.beta),
        "norm_sq": rational(&si.norm_sq),
        "z_support": support(&si.z_support),
        "y_support": support(&si.y_support),
        "codim": si.codim,
        "fiber_dim": si.fiber_dim,
        "stabilizer_roots": vectors(&si.stabilizer_roots),
    })
}

fn strata_of(input: &Input) -> Result<Vec<StratumIndex>, CliError> {
    index_set(&input.ws, input.rd.as_ref()).map_err(CliError::computation)
}

pub fn strata(path: &Path, partition: bool) -> Result<Value, CliError> {
    let input = load(path)?;
    let b = strata_of(&input)?;
    let mut payload = json!({
        "rank": input.ws.rank(),
        "weights": input.ws.len(),
        "index_set": b.iter().map(|si| si.beta.to_string()).collect::<Vec<_>>(),
        "strata": b.iter().enumerate().map(|(i, si)| stratum(i, si)).collect::<Vec<_>>(),
    });
    if partition {
        let part = strata_partition(&input.ws).map_err(CliError::computation)?;
        let rows: Vec<Value> = part
            .iter()
            .map(|(s, beta)| {
                let class = match classify_support(s, &input.ws) {
                    StabilityClass::Stable => "stable",
                    StabilityClass::Semistable => "semistable",
                    StabilityClass::Unstable(_) => "unstable",
                };
                json!({ "support": support(s), "beta": vector(beta), "class": class })
            })
            .collect();
        payload["partition"] = Value::Array(rows);
    }
    Ok(report("strata", &input, payload))
}

fn term(t: &StratumTerm) -> Value {
    json!({ "beta": vector(&t.beta), "codim": t.codim, "series": series(&t.series) })
}

pub fn betti(path: &Path) -> Result<Value, CliError> {
    let input = load(path)?;
    if input.rd.as_ref().is_some_and(|rd| !rd.positive_roots().is_empty()) {
        return Err(CliError::Unsupported(
            "Betti numbers are computed for torus actions only; remove the roots".into(),
        ));
    }
    let ws = &input.ws;
    let ss = semistable_series(ws).map_err(CliError::computation)?;
    let quotient = match quotient_betti(ws) {
        Ok(p) if p.is_zero() => json!({ "status": "empty" }),
        Ok(p) => json!({ "status": "polynomial", "betti": polynomial(&p) }),
        Err(CohomologyError::StrictlySemistable(s)) => {
            json!({ "status": "strictly_semistable", "support": support(&s) })
        }
        Err(CohomologyError::NotPolynomial) => json!({ "status": "not_polynomial" }),
        Err(e) => return Err(CliError::computation(e)),
    };
    let cert = perfection_certificate(ws).map_err(CliError::computation)?;
    let payload = json!({
        "semistable_series": series(&ss),
        "quotient": quotient,
        "perfection": {
            "equal": cert.equal,
            "lhs": series(&cert.lhs),
            "rhs": series(&cert.rhs),
            "terms": cert.terms.iter().map(term).collect::<Vec<_>>(),
        },
    });
    Ok(report("betti", &input, payload))
}

/// Resolves `--beta` / `--beta-index` against the sorted index set.
fn choose_beta(b: &[StratumIndex], choice: &BetaChoice) -> Result<Option<usize>, CliError> {
    if let Some(i) = choice.beta_index {
        if i >= b.len() {
            return Err(CliError::BetaNotInIndexSet(format!(
                "index {i} out of range (|B| = {})",
                b.len()
            )));
        }
        return Ok(Some(i));
    }
    let Some(text) = &choice.beta else {
        return Ok(None);
    };
    let v: RationalVector = text.parse().map_err(CliError::parse)?;
    b.iter()
        .position(|si| si.beta == v)
        .map(Some)
        .ok_or_else(|| CliError::BetaNotInIndexSet(v.to_string()))
}

fn window(w: &EpsilonWindow) -> Value {
    json!({
        "walls": w.walls.iter().map(rational).collect::<Vec<_>>(),
        "eps_max": w.eps_max.as_ref().map(rational),
        "empty_for_all_eps": w.empty_for_all_eps,
    })
}

fn quotient_report(r: &QuotientReport) -> Value {
    json!({
        "beta": vector(&r.beta),
        "epsilon": rational(&r.epsilon),
        "nonempty": r.nonempty,
        "complex_dim": r.complex_dim,
        "betti": r.betti.as_ref().map(polynomial),
        "locally_free": r.locally_free,
        "semistable_supports": r.semistable_supports.iter().map(support).collect::<Vec<_>>(),
        "stabilizer_roots": vectors(&r.stabilizer_roots),
    })
}

fn quotient_error(e: QuotientError) -> CliError {
    match e {
        QuotientError::ZeroBeta => CliError::BetaNotInIndexSet(
            "beta = 0 labels the semistable stratum, which has no shifted quotient".into(),
        ),
        QuotientError::NonPositiveEpsilon => CliError::Epsilon("a nonpositive value".into()),
        other => CliError::computation(other),
    }
}

pub fn quotient(
    path: &Path,
    choice: &BetaChoice,
    epsilon: Option<&str>,
    family: bool,
) -> Result<Value, CliError> {
    let input = load(path)?;
    let eps = match epsilon {
        Some(s) => {
            let e = parse_rational(s).ok_or_else(|| CliError::parse(format!("bad epsilon {s:?}")))?;
            if e <= Q::from_integer(0.into()) {
                return Err(CliError::Epsilon(format_rational(&e)));
            }
            Some(e)
        }
        None => None,
    };
    let b = strata_of(&input)?;
    let pos = choose_beta(&b, choice)?
        .ok_or_else(|| CliError::parse("one of --beta or --beta-index is required"))?;
    let si = &b[pos];
    let w = epsilon_window(si, &input.ws).map_err(quotient_error)?;
    let mut payload = json!({
        "beta": vector(&si.beta),
        "beta_index": pos,
        "window": window(&w),
    });
    if family {
        let chambers = quotient_family(si, &input.ws).map_err(quotient_error)?;
        payload["family"] = chambers
            .iter()
            .map(|c| {
                json!({
                    "lo": rational(&c.lo),
                    "hi": rational(&c.hi),
                    "report": quotient_report(&c.report),
                })
            })
            .collect();
    } else if let Some(eps) = eps {
        let r = unstable_quotient(si, &input.ws, &eps).map_err(quotient_error)?;
        payload["report"] = quotient_report(&r);
    }
    Ok(report("quotient", &input, payload))
}

fn parse_sp(text: &str) -> Result<Vec<usize>, CliError> {
    let body = text.trim().trim_start_matches('[').trim_end_matches(']');
    if body.trim().is_empty() {
        return Ok(Vec::new());
    }
    body.split(',')
        .map(|p| {
            p.trim()
                .parse()
                .map_err(|_| CliError::parse(format!("bad simple-root index {p:?}")))
        })
        .collect()
}

pub fn implosion(path: &Path, sp: &str, xi: &str) -> Result<Value, CliError> {
    let input = load(path)?;
    let Some(rd) = input.rd.clone() else {
        return Err(CliError::Unsupported(
            "implosion needs root data in the input".into(),
        ));
    };
    let sp = parse_sp(sp)?;
    let xi: RationalVector = xi.parse().map_err(CliError::parse)?;
    if xi.rank() != rd.rank() {
        return Err(CliError::validation(
            "xi",
            format!("rank mismatch: expected {}, found {}", rd.rank(), xi.rank()),
        ));
    }
    let pd = ParabolicData::new(rd, sp).map_err(|e| CliError::validation("sp", e))?;
    let (rep, word) = dominant_representative(&xi, &pd).map_err(CliError::computation)?;
    let member = in_sweep_cone(&xi, &pd).map_err(CliError::computation)?;
    let face = if member {
        let f = face_data(&rep, &pd).map_err(CliError::computation)?;
        json!({
            "vanishing_roots": vectors(&f.vanishing_roots),
            "face_equations": vectors(&f.face_equations),
            "stabilizer_is_torus": f.stabilizer_is_torus,
        })
    } else {
        Value::Null
    };
    let payload = json!({
        "sp": pd.sp(),
        "xi": vector(&xi),
        "member": member,
        "dominant_representative": vector(&rep),
        "word": word,
        "face_data": face,
    });
    Ok(report("implosion", &input, payload))
}

pub fn plot(path: &Path, out: &Path, choice: &BetaChoice) -> Result<Value, CliError> {
    let input = load(path)?;
    if input.ws.rank() > 2 {
        return Err(CliError::RankTooLarge(input.ws.rank()));
    }
    let b = strata_of(&input)?;
    let chosen = choose_beta(&b, choice)?;
    let walls = match chosen {
        Some(i) if !b[i].is_zero() => Some(epsilon_window(&b[i], &input.ws).map_err(quotient_error)?),
        _ => None,
    };
    let svg = plot::render(&input.ws, &b, chosen.map(|i| (&b[i], walls.as_ref())));
    std::fs::write(out, &svg).map_err(|e| CliError::Io(format!("{}: {e}", out.display())))?;
    let payload = json!({
        "svg": out.display().to_string(),
        "rank": input.ws.rank(),
        "index_set": b.iter().map(|si| si.beta.to_string()).collect::<Vec<_>>(),
        "beta_index": chosen,
        "bytes": svg.len(),
    });
    Ok(report("plot", &input, payload))
}
