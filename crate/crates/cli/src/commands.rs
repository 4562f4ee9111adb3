use std::fmt::Write as _;
use std::io::Read as _;
use std::path::PathBuf;

use serde_json::{json, Value};
use tautkit::error::TautError;
use tautkit::exact::{format_rational, BigRational, Partition};
use tautkit::faber::{faber_identities, kappa_solve, FaberIdentity};
use tautkit::graphs::{enumerate_stable_with, EnumerateOptions};
use tautkit::hodge::{elsv_forward, hodge_from_hurwitz, HodgeIntegral, HurwitzRoute};
use tautkit::hurwitz::{
    double_hurwitz_bruteforce, hurwitz_bruteforce, hurwitz_transfer, EnumerationCaps, HurwitzQuery,
};
use tautkit::invariance::{cross_ratio_relation_m05, rl_apply, GraphSum};
use tautkit::psi::{witten_correlator, CorrelatorKey, IntersectionTable};

use crate::{Caps, Cli, Command, Failure, Fixture, Record, Route};

type Outcome = Result<Record, Failure>;

impl Caps {
    fn brute(&self) -> EnumerationCaps {
        let d = EnumerationCaps::default();
        EnumerationCaps {
            max_degree: self.max_degree.unwrap_or(d.max_degree),
            max_branch: self.max_branch.unwrap_or(d.max_branch),
        }
    }

    fn transfer(&self) -> EnumerationCaps {
        let d = EnumerationCaps::transfer_default();
        EnumerationCaps {
            max_degree: self.max_degree.unwrap_or(d.max_degree),
            max_branch: self.max_branch.unwrap_or(d.max_branch),
        }
    }
}

fn scalar(
    command: &'static str,
    inputs: Value,
    v: &BigRational,
    provenance: &'static str,
) -> Record {
    let s = format_rational(v);
    Record {
        command,
        inputs,
        text: format!("{s}\n"),
        value: Value::String(s),
        provenance,
    }
}

fn list(s: &str) -> Result<Vec<u32>, TautError> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| TautError::Parse(format!("bad integer {t:?}")))
        })
        .collect()
}

pub fn run(cli: &Cli) -> Outcome {
    let caps = &cli.caps;
    match &cli.command {
        Command::Hurwitz {
            genus,
            profile,
            disconnected,
            double,
            route,
        } => {
            let beta: Partition = profile.parse()?;
            let mut inputs = json!({
                "genus": genus,
                "profile": beta.parts(),
                "connected": !disconnected,
            });
            if let Some(zero) = double {
                let alpha: Partition = zero.parse()?;
                if *route == Route::Transfer {
                    return Err(TautError::Domain(
                        "double Hurwitz numbers use the brute-force route".into(),
                    )
                    .into());
                }
                inputs["double"] = json!(alpha.parts());
                let v =
                    double_hurwitz_bruteforce(*genus, &alpha, &beta, !disconnected, &caps.brute())?;
                return Ok(scalar("hurwitz", inputs, &v, "bruteforce"));
            }
            let q = HurwitzQuery {
                g: *genus,
                alpha: beta,
                connected: !disconnected,
            };
            let (v, prov) = match route {
                Route::Bruteforce => (hurwitz_bruteforce(&q, &caps.brute())?, "bruteforce"),
                Route::Transfer => (hurwitz_transfer(&q, &caps.transfer())?, "recursion"),
            };
            Ok(scalar("hurwitz", inputs, &v, prov))
        }

        Command::Psi { genus, exps, cache } => {
            let exps = list(exps)?;
            let key = CorrelatorKey::new(*genus, exps.clone())?;
            let cache: Option<PathBuf> = cache
                .clone()
                .or_else(|| std::env::var_os("TAUTKIT_CACHE").map(PathBuf::from));
            let mut table = match &cache {
                Some(p) => IntersectionTable::with_cache(p)?,
                None => IntersectionTable::new(),
            };
            let v = witten_correlator(&key, &mut table)?;
            if cache.is_some() {
                table.flush()?;
            }
            let inputs = json!({ "genus": genus, "exps": exps, "cache": cache });
            let prov = if *genus == 0 || !key.is_top_degree() {
                "closed-form"
            } else {
                "kdv"
            };
            Ok(scalar("psi", inputs, &v, prov))
        }

        Command::Hodge {
            genus,
            points,
            route,
        } => {
            let (r, c) = match route {
                Route::Bruteforce => (HurwitzRoute::BruteForce, caps.brute()),
                Route::Transfer => (HurwitzRoute::Transfer, caps.transfer()),
            };
            let h = hodge_from_hurwitz(*genus, *points, r, &c)?;
            let mut text = String::new();
            for x in &h {
                let a: Vec<String> = x.a.iter().map(|e| e.to_string()).collect();
                let _ = writeln!(
                    text,
                    "psi^({}) lambda_{} = {}",
                    a.join(","),
                    x.k,
                    format_rational(&x.value)
                );
            }
            Ok(Record {
                command: "hodge",
                inputs: json!({ "genus": genus, "points": points }),
                value: serde_json::to_value(&h).expect("serializable"),
                provenance: "elsv",
                text,
            })
        }

        Command::Elsv { genus, profile } => {
            let alpha: Partition = profile.parse()?;
            let n = alpha.len();
            let hodge: Vec<HodgeIntegral> = if *genus == 0 && n <= 2 {
                Vec::new()
            } else {
                hodge_from_hurwitz(*genus, n, HurwitzRoute::Transfer, &caps.transfer())?
            };
            let forward = elsv_forward(*genus, &alpha, &hodge)?;
            let brute = hurwitz_bruteforce(
                &HurwitzQuery::connected(*genus, alpha.clone()),
                &caps.brute(),
            )?;
            let agree = forward == brute;
            let (f, b) = (format_rational(&forward), format_rational(&brute));
            let rec = Record {
                command: "elsv",
                inputs: json!({ "genus": genus, "profile": alpha.parts() }),
                value: json!({ "elsv": f, "bruteforce": b, "agree": agree }),
                provenance: "elsv",
                text: format!(
                    "elsv {f}\nbruteforce {b}\n{}\n",
                    if agree { "agree" } else { "MISMATCH" }
                ),
            };
            if agree {
                Ok(rec)
            } else {
                Err(Failure::Mismatch(rec))
            }
        }

        Command::Faber { genus, d, solve } => {
            let inputs =
                json!({ "genus": genus, "d": d.as_deref().map(list).transpose()?, "solve": solve });
            if *solve {
                let s = kappa_solve(*genus)?;
                let mut text = String::new();
                for (m, v) in &s.values {
                    let _ = writeln!(text, "{m} = {} kappa_{}", format_rational(v), genus - 2);
                }
                for m in &s.unresolved {
                    let _ = writeln!(text, "{m} = ?");
                }
                return Ok(Record {
                    command: "faber",
                    inputs,
                    value: serde_json::to_value(&s).expect("serializable"),
                    provenance: "closed-form",
                    text,
                });
            }
            let ids = match d {
                Some(d) => vec![FaberIdentity::new(*genus, &list(d)?)?],
                None => faber_identities(*genus)?,
            };
            let mut text = String::new();
            for id in &ids {
                let rhs: Vec<String> = id.rhs.iter().map(|(m, c)| format!("{c} {m}")).collect();
                let _ = writeln!(
                    text,
                    "{:?}: {} kappa_{} = {}",
                    id.d,
                    format_rational(&id.lhs_coeff),
                    genus - 2,
                    rhs.join(" + ")
                );
            }
            let value = if d.is_some() {
                serde_json::to_value(&ids[0])
            } else {
                serde_json::to_value(&ids)
            };
            Ok(Record {
                command: "faber",
                inputs,
                value: value.expect("serializable"),
                provenance: "closed-form",
                text,
            })
        }

        Command::Graphs {
            genus,
            legs,
            dim,
            disconnected,
            dot,
            count,
        } => {
            let opts = EnumerateOptions {
                connected: !disconnected,
                max_dim: caps.max_dim,
                ..Default::default()
            };
            let classes: Vec<_> = enumerate_stable_with(*genus, *legs, &opts)?
                .into_iter()
                .filter(|c| dim.is_none_or(|k| c.dimension() == k))
                .collect();
            if let Some(path) = dot {
                let body: String = classes
                    .iter()
                    .enumerate()
                    .map(|(i, c)| c.canonical.to_dot(&format!("G{i}")))
                    .collect();
                std::fs::write(path, body).map_err(TautError::from)?;
            }
            let inputs = json!({
                "genus": genus,
                "legs": legs,
                "dim": dim,
                "connected": !disconnected,
            });
            if *count {
                return Ok(Record {
                    command: "graphs",
                    inputs,
                    value: json!(classes.len()),
                    provenance: "bruteforce",
                    text: format!("{}\n", classes.len()),
                });
            }
            let mut text = String::new();
            let mut value = Vec::new();
            for c in &classes {
                let _ = writeln!(
                    text,
                    "codim={} dim={} aut={}  {}",
                    c.codim(),
                    c.dimension(),
                    c.automorphisms,
                    c.canonical
                );
                value.push(json!({
                    "graph": c.canonical,
                    "genus": c.genus(),
                    "codim": c.codim(),
                    "dim": c.dimension(),
                    "automorphisms": c.automorphisms,
                }));
            }
            Ok(Record {
                command: "graphs",
                inputs,
                value: Value::Array(value),
                provenance: "bruteforce",
                text,
            })
        }

        Command::Rl { l, input, fixture } => {
            let (sum, source) = match (input, fixture) {
                (_, Some(Fixture::M05)) => (cross_ratio_relation_m05(), json!("m05")),
                (Some(src), None) => (read_sum(src)?, json!(src)),
                (None, None) => {
                    return Err(TautError::Domain("rl needs --input or --fixture".into()).into())
                }
            };
            let out = rl_apply(&sum, *l)?;
            Ok(Record {
                command: "rl",
                inputs: json!({ "l": l, "input": source }),
                value: serde_json::to_value(&out).expect("serializable"),
                provenance: "recursion",
                text: sum_text(&out),
            })
        }

        Command::Euler { genus, legs } => {
            let v = match legs {
                Some(n) => tautkit::exact::euler_char_mgn(*genus, *n)?,
                None => tautkit::exact::euler_char_mg(*genus)?,
            };
            Ok(scalar(
                "euler",
                json!({ "genus": genus, "legs": legs }),
                &v,
                "closed-form",
            ))
        }
    }
}

/// A graph sum from a file or standard input; a full output record of an
/// earlier `rl` run is accepted as well.
fn read_sum(src: &str) -> Result<GraphSum, TautError> {
    let text = if src == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(src)?
    };
    let mut v: Value = serde_json::from_str(&text).map_err(|e| TautError::Parse(e.to_string()))?;
    if v.get("command").is_some() {
        if let Some(inner) = v.get_mut("value") {
            v = inner.take();
        }
    }
    serde_json::from_value(v).map_err(|e| TautError::Parse(e.to_string()))
}

fn sum_text(s: &GraphSum) -> String {
    if s.is_zero() {
        return "0\n".into();
    }
    let mut text = String::new();
    for (x, c) in s.terms() {
        let _ = writeln!(text, "{} * [{}]", format_rational(c), x);
    }
    for (key, c) in s.points() {
        let comps: Vec<String> = key
            .iter()
            .map(|(g, legs)| {
                let l: Vec<String> = legs.iter().map(|x| x.to_string()).collect();
                format!("{g}{{{}}}", l.join(","))
            })
            .collect();
        let _ = writeln!(text, "{} * point[{}]", format_rational(c), comps.join(" "));
    }
    text
}
