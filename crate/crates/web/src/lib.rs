//! WebAssembly bindings behind `www/index.html`.
//!
//! Each export takes a JSON descriptor, as accepted by the matching `frobex`
//! subcommand, and returns the text report.

use frobex_cli::{parse_json, CliError, Format};
use wasm_bindgen::prelude::*;

fn report(result: Result<(i32, String), CliError>) -> Result<String, String> {
    result.map(|(_, text)| text).map_err(|e| e.to_string())
}

pub fn extend_cover_text(spec: &str) -> Result<String, String> {
    let spec = parse_json(spec).map_err(|e| e.to_string())?;
    report(frobex_cli::extend_cover(Format::Text, &spec))
}

pub fn delta_text(spec: &str) -> Result<String, String> {
    let spec = parse_json(spec).map_err(|e| e.to_string())?;
    report(frobex_cli::delta(Format::Text, &spec))
}

pub fn wild_table_text(spec: &str) -> Result<String, String> {
    let spec = parse_json(spec).map_err(|e| e.to_string())?;
    report(frobex_cli::wild_demo(Format::Text, &spec))
}

#[wasm_bindgen]
pub fn extend_cover(spec: &str) -> Result<String, JsValue> {
    extend_cover_text(spec).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn delta(spec: &str) -> Result<String, JsValue> {
    delta_text(spec).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn wild_table(spec: &str) -> Result<String, JsValue> {
    wild_table_text(spec).map_err(|e| JsValue::from_str(&e))
}
