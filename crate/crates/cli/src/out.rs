//! Output helpers: significant-digit formatting and the provenance
//! header every command emits.

use serde_json::{Map, Value};

/// Formats to 12 significant digits; all floating output goes through
/// here so reruns diff cleanly.
pub fn fmt_f64(x: f64) -> String {
    format!("{:.11e}", x)
}

/// Rounds through the 12-significant-digit representation so JSON output
/// carries the same digits as the plain prints.
pub fn round_f64(x: f64) -> f64 {
    fmt_f64(x).parse().unwrap_or(x)
}

pub fn json_num(x: f64) -> Value {
    serde_json::Number::from_f64(round_f64(x))
        .map(Value::Number)
        .unwrap_or(Value::Null)
}

/// Provenance header: command echo, version, seed and a timestamp that
/// stays on its own line so reruns differ in exactly that line.
pub fn provenance(command: &str, seed: Option<u64>) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("command".into(), Value::String(command.to_string()));
    m.insert(
        "version".into(),
        Value::String(env!("CARGO_PKG_VERSION").to_string()),
    );
    if let Some(s) = seed {
        m.insert("seed".into(), Value::Number(s.into()));
    }
    m.insert(
        "timestamp".into(),
        Value::Number(
            std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0)
                .into(),
        ),
    );
    m
}

/// Prints the detail object as pretty JSON on stdout.
pub fn emit(detail: Map<String, Value>) {
    println!(
        "{}",
        serde_json::to_string_pretty(&Value::Object(detail)).expect("json")
    );
}

/// CSV provenance comment line.
pub fn csv_header(command: &str) -> String {
    format!(
        "# polyprime {} command={} timestamp={}",
        env!("CARGO_PKG_VERSION"),
        command,
        std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0)
    )
}
