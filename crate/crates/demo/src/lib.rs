//! WebAssembly bindings for the static page in `www/`.

use freecon::config::{Group, GroupConfig};
use freecon::genericity::{fs_type_census_capped, to_json};
use freecon::FreeConstruction;
use wasm_bindgen::prelude::*;

/// Largest ball the page will enumerate.
pub const DEMO_BALL_CAP: usize = 200_000;

/// Bundled example configurations as a JSON object, name to TOML text.
pub fn preset_map() -> String {
    let presets = [
        ("z2_z3", include_str!("../../../configs/z2_z3.toml")),
        ("dihedral", include_str!("../../../configs/dihedral.toml")),
        ("s3_c2_s3", include_str!("../../../configs/s3_c2_s3.toml")),
        ("central_k1", include_str!("../../../configs/central_k1.toml")),
        ("central_k2", include_str!("../../../configs/central_k2.toml")),
        ("bs23", include_str!("../../../configs/bs23.toml")),
    ];
    let map: serde_json::Map<String, serde_json::Value> = presets
        .iter()
        .map(|(k, v)| (k.to_string(), serde_json::Value::from(*v)))
        .collect();
    serde_json::Value::Object(map).to_string()
}

fn with_group<R>(
    config: &str,
    amalgam: impl FnOnce(&GroupConfig, &freecon::amalgam::AmalgamGroup) -> freecon::Result<R>,
    hnn: impl FnOnce(&GroupConfig, &freecon::hnn::HnnGroup) -> freecon::Result<R>,
) -> Result<R, String> {
    let cfg = GroupConfig::parse(config, None).map_err(|e| e.to_string())?;
    match &cfg.group {
        Group::Amalgam(p) => amalgam(&cfg, p),
        Group::Hnn(g) => hnn(&cfg, g),
    }
    .map_err(|e| e.to_string())
}

fn reduce_in<C: FreeConstruction>(group: &C, word: &str) -> freecon::Result<String> {
    let x = group.parse_word(word)?;
    Ok(format!(
        "{} ({} {})",
        group.format(&x),
        group.length_name(),
        group.length(&x)
    ))
}

fn classify_in<C: FreeConstruction>(group: &C, word: &str) -> freecon::Result<String> {
    let x = group.parse_word(word)?;
    let (conj, core) = group.cyclic_form(&x);
    Ok(format!(
        "{}\ncore: {} ({} {})\nconjugator: {}",
        if group.is_elliptic(&x) {
            "elliptic"
        } else {
            "hyperbolic"
        },
        group.format(&core),
        group.length_name(),
        group.length(&core),
        group.format(&conj)
    ))
}

fn census_in<C: FreeConstruction>(cfg: &GroupConfig, group: &C, d: u32, radius: usize) -> freecon::Result<String> {
    let cap = cfg.ball_cap.min(DEMO_BALL_CAP);
    Ok(to_json(&fs_type_census_capped(
        group, &cfg.id, cfg.window, d, radius, cap,
    )?))
}

/// Normal form and length of a word.
pub fn reduce_text(config: &str, word: &str) -> Result<String, String> {
    with_group(config, |_, p| reduce_in(p, word), |_, g| reduce_in(g, word))
}

/// Elliptic or hyperbolic, with cyclic core and conjugator.
pub fn classify_text(config: &str, word: &str) -> Result<String, String> {
    with_group(config, |_, p| classify_in(p, word), |_, g| classify_in(g, word))
}

/// Root census report as JSON.
pub fn census_text(config: &str, d: u32, radius: usize) -> Result<String, String> {
    with_group(
        config,
        |c, p| census_in(c, p, d, radius),
        |c, g| census_in(c, g, d, radius),
    )
}

#[wasm_bindgen]
pub fn presets() -> String {
    preset_map()
}

#[wasm_bindgen]
pub fn reduce(config: &str, word: &str) -> Result<String, JsValue> {
    reduce_text(config, word).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn classify(config: &str, word: &str) -> Result<String, JsValue> {
    classify_text(config, word).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn census(config: &str, d: u32, radius: u32) -> Result<String, JsValue> {
    census_text(config, d, radius as usize).map_err(|e| JsValue::from_str(&e))
}
