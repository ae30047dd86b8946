//! JSON and CSV output of complete spectral data.

use crate::CliError;
use scheme_atlas::families::FamilyParams;
use scheme_atlas::scheme::{SpectralTable, Tensor3};
use serde_json::{json, Value};
use std::path::PathBuf;

fn matrix_json(rows: &[Vec<scheme_atlas::Rational>]) -> Value {
    Value::Array(
        rows.iter()
            .map(|row| Value::Array(row.iter().map(|v| Value::String(v.to_string())).collect()))
            .collect(),
    )
}

fn tensor_json(tensor: &Tensor3) -> Value {
    let n = tensor.domain.len();
    Value::Array(
        (0..n)
            .map(|i| {
                Value::Array(
                    (0..n)
                        .map(|j| {
                            Value::Array(
                                (0..n)
                                    .map(|k| Value::String(tensor.at(i, j, k).to_string()))
                                    .collect(),
                            )
                        })
                        .collect(),
                )
            })
            .collect(),
    )
}

fn domain_json(t: &SpectralTable) -> (Value, Value) {
    let to_value = |members: &[scheme_atlas::scheme::MultiIndex]| {
        Value::Array(
            members
                .iter()
                .map(|m| Value::Array(m.0.iter().map(|&v| json!(v)).collect()))
                .collect(),
        )
    };
    (to_value(t.relations.members()), to_value(t.idempotents.members()))
}

pub fn write_tables(
    params: &FamilyParams,
    tag: &str,
    output: &Option<PathBuf>,
    csv_prefix: &Option<PathBuf>,
) -> Result<(), CliError> {
    let t = params.table().map_err(|e| CliError::Usage(e.to_string()))?;
    let krein = Tensor3::krein(&t);
    let inter = Tensor3::intersection(&t);
    let (relations, idempotents) = domain_json(&t);
    let doc = json!({
        "family": tag,
        "label": t.label,
        "size": t.size.to_string(),
        "reduction": t.reduction,
        "relations": relations,
        "idempotents": idempotents,
        "p": matrix_json(&t.p),
        "q": matrix_json(&t.q),
        "valencies": t.valencies.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        "multiplicities": t.multiplicities.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        "krein": tensor_json(&krein),
        "intersection": tensor_json(&inter),
    });
    let text = serde_json::to_string_pretty(&doc).map_err(|e| CliError::Usage(e.to_string()))?;
    match output {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", p.display())))?,
        None => println!("{text}"),
    }
    if let Some(prefix) = csv_prefix {
        let csv_of = |rows: &[Vec<scheme_atlas::Rational>]| -> String {
            rows.iter()
                .map(|row| row.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","))
                .collect::<Vec<_>>()
                .join("\n")
                + "\n"
        };
        let write = |suffix: &str, text: String| -> Result<(), CliError> {
            let mut path = prefix.as_os_str().to_owned();
            path.push(suffix);
            let path = PathBuf::from(path);
            std::fs::write(&path, text)
                .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))
        };
        write(".p.csv", csv_of(&t.p))?;
        write(".q.csv", csv_of(&t.q))?;
    }
    Ok(())
}
