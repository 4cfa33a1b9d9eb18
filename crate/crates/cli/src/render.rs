//! Text and JSON rendering of command reports.

use crate::commands::{Envelope, Outcome};
use crate::Cli;
use serde_json::Value;

pub fn render(cli: &Cli, outcome: &Outcome) -> String {
    let Outcome::Report(env, text) = outcome else { return String::new() };
    if cli.global.json {
        return serde_json::to_string_pretty(env).expect("envelopes serialize") + "\n";
    }
    match text {
        Some(t) if env.status == "ok" => t.clone(),
        _ => generic(env),
    }
}

fn generic(env: &Envelope) -> String {
    let mut out = format!("status: {}\n", env.status);
    if let Some(w) = &env.witness {
        out.push_str(&format!("witness: {w}\n"));
    }
    write_value(&mut out, &env.report, 0);
    out
}

fn inline(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| !x.is_array() && !x.is_object()) => {
            Some(a.iter().map(|x| inline(x).unwrap_or_default()).collect::<Vec<_>>().join(", "))
        }
        _ => None,
    }
}

fn write_value(out: &mut String, v: &Value, indent: usize) {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match inline(x) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        write_value(out, x, indent + 2);
                    }
                }
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                match inline(x) {
                    Some(s) => out.push_str(&format!("{pad}[{i}] {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}[{i}]\n"));
                        write_value(out, x, indent + 2);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", inline(other).unwrap_or_default())),
    }
}
