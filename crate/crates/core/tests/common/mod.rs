#![allow(dead_code)]

use std::path::PathBuf;

use freecon::amalgam::AmalgamGroup;
use freecon::config::{Group, GroupConfig};
use freecon::hnn::HnnGroup;

pub fn load(name: &str) -> GroupConfig {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("../../configs");
    p.push(format!("{name}.toml"));
    let text = std::fs::read_to_string(&p).unwrap_or_else(|e| panic!("{}: {e}", p.display()));
    GroupConfig::parse(&text, None).unwrap()
}

pub fn amalgam(name: &str) -> AmalgamGroup {
    match load(name).group {
        Group::Amalgam(p) => p,
        Group::Hnn(_) => panic!("{name} is an HNN extension"),
    }
}

pub fn hnn(name: &str) -> HnnGroup {
    match load(name).group {
        Group::Hnn(g) => g,
        Group::Amalgam(_) => panic!("{name} is an amalgam"),
    }
}
