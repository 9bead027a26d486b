//! TOML group definitions.
//!
//! ```toml
//! construction = "amalgam"   # or "hnn"
//! id = "z2_z3"
//! window = 2                 # optional, default 2
//!
//! [g]
//! kind = "finite-table"
//! table = [[0, 1], [1, 0]]
//! names = ["e", "a"]
//!
//! [h]
//! kind = "finite-table"
//! permutations = [[1, 2, 0]]
//!
//! [a_g]
//! kind = "trivial"
//! [a_h]
//! kind = "trivial"
//! ```
//!
//! HNN extensions use `[base]`, `[a]` and `[b]` instead. Subgroups are
//! `trivial`, `finite` (with `elements`, given as indices, names or
//! literals) or `lattice` (with integer `generators`); the i-th element or
//! generator of one side is identified with the i-th of the other.

use serde::Deserialize;

use crate::amalgam::AmalgamGroup;
use crate::error::{Error, Result};
use crate::factors::{AbelianGroup, FactorElement, FactorGroup, FreeGroup, SubgroupKind, TableGroup};
use crate::genericity::BALL_CAP;
use crate::hnn::HnnGroup;

pub const DEFAULT_WINDOW: u32 = 2;
pub const DEFAULT_SEARCH_BOUND: usize = 2;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    construction: String,
    id: String,
    window: Option<u32>,
    ball_cap: Option<usize>,
    search_bound: Option<usize>,
    g: Option<RawFactor>,
    h: Option<RawFactor>,
    a_g: Option<RawSubgroup>,
    a_h: Option<RawSubgroup>,
    base: Option<RawFactor>,
    a: Option<RawSubgroup>,
    b: Option<RawSubgroup>,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
enum RawFactor {
    #[serde(rename = "finite-table")]
    Table {
        table: Option<Vec<Vec<u32>>>,
        permutations: Option<Vec<Vec<usize>>>,
        names: Option<Vec<String>>,
    },
    #[serde(rename = "fg-abelian")]
    Abelian { moduli: Vec<i64> },
    #[serde(rename = "free")]
    Free { rank: u32 },
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum Literal {
    Index(i64),
    Text(String),
    Tuple(Vec<i64>),
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
enum RawSubgroup {
    #[serde(rename = "trivial")]
    Trivial {},
    #[serde(rename = "finite")]
    Finite { elements: Vec<Literal> },
    #[serde(rename = "lattice")]
    Lattice { generators: Vec<Vec<i64>> },
}

#[derive(Clone, Debug)]
pub enum Group {
    Amalgam(AmalgamGroup),
    Hnn(HnnGroup),
}

/// A parsed configuration with its group built.
#[derive(Clone, Debug)]
pub struct GroupConfig {
    pub id: String,
    pub window: u32,
    pub ball_cap: usize,
    pub search_bound: usize,
    pub group: Group,
}

fn build_factor(field: &str, raw: RawFactor) -> Result<FactorGroup> {
    let ctx = |e: Error| Error::Config(format!("[{field}]: {e}"));
    match raw {
        RawFactor::Table {
            table,
            permutations,
            names,
        } => {
            let t = match (table, permutations) {
                (Some(rows), None) => TableGroup::new(rows),
                (None, Some(perms)) => TableGroup::from_permutations(&perms),
                _ => {
                    return Err(Error::Config(format!(
                        "[{field}]: give exactly one of `table` or `permutations`"
                    )))
                }
            }
            .map_err(ctx)?;
            let t = match names {
                Some(n) => t.with_names(n).map_err(ctx)?,
                None => t,
            };
            Ok(FactorGroup::Table(t))
        }
        RawFactor::Abelian { moduli } => Ok(FactorGroup::Abelian(AbelianGroup::new(moduli).map_err(ctx)?)),
        RawFactor::Free { rank } => Ok(FactorGroup::Free(FreeGroup::new(rank).map_err(ctx)?)),
    }
}

fn literal(group: &FactorGroup, lit: &Literal) -> Result<FactorElement> {
    match lit {
        Literal::Index(i) => group.parse_element(&i.to_string()),
        Literal::Text(s) => group.parse_element(s),
        Literal::Tuple(v) => {
            let parts: Vec<String> = v.iter().map(i64::to_string).collect();
            group.parse_element(&format!("({})", parts.join(",")))
        }
    }
}

fn build_subgroup(field: &str, group: &FactorGroup, raw: Option<RawSubgroup>) -> Result<SubgroupKind> {
    let raw = raw.ok_or_else(|| Error::Config(format!("missing [{field}] subgroup block")))?;
    Ok(match raw {
        RawSubgroup::Trivial {} => SubgroupKind::Trivial,
        RawSubgroup::Finite { elements } => SubgroupKind::Finite(
            elements
                .iter()
                .map(|l| literal(group, l))
                .collect::<Result<_>>()
                .map_err(|e| Error::Config(format!("[{field}].elements: {e}")))?,
        ),
        RawSubgroup::Lattice { generators } => SubgroupKind::Lattice(generators),
    })
}

fn need<T>(field: &str, x: Option<T>) -> Result<T> {
    x.ok_or_else(|| Error::Config(format!("missing [{field}] block")))
}

fn forbid<T>(field: &str, construction: &str, x: &Option<T>) -> Result<()> {
    if x.is_some() {
        return Err(Error::Config(format!(
            "[{field}] is not used by {construction} configs"
        )));
    }
    Ok(())
}

impl GroupConfig {
    /// Parses and builds; `window` overrides the configured window.
    pub fn parse(text: &str, window: Option<u32>) -> Result<GroupConfig> {
        let raw: RawConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string().trim_end().to_string()))?;
        let window = window.or(raw.window).unwrap_or(DEFAULT_WINDOW);
        if window == 0 {
            return Err(Error::Config("window must be positive".into()));
        }
        let id = raw.id.clone();
        if id.trim().is_empty() {
            return Err(Error::Config("id must not be empty".into()));
        }
        let ball_cap = raw.ball_cap.unwrap_or(BALL_CAP);
        let search_bound = raw.search_bound.unwrap_or(DEFAULT_SEARCH_BOUND);
        let group = match raw.construction.as_str() {
            "amalgam" => {
                forbid("base", "amalgam", &raw.base)?;
                forbid("a", "amalgam", &raw.a)?;
                forbid("b", "amalgam", &raw.b)?;
                let g = build_factor("g", need("g", raw.g)?)?;
                let h = build_factor("h", need("h", raw.h)?)?;
                let a_g = build_subgroup("a_g", &g, raw.a_g)?;
                let a_h = build_subgroup("a_h", &h, raw.a_h)?;
                Group::Amalgam(AmalgamGroup::new(g, a_g, h, a_h, window).map_err(|e| Error::Config(e.to_string()))?)
            }
            "hnn" => {
                forbid("g", "hnn", &raw.g)?;
                forbid("h", "hnn", &raw.h)?;
                forbid("a_g", "hnn", &raw.a_g)?;
                forbid("a_h", "hnn", &raw.a_h)?;
                let base = build_factor("base", need("base", raw.base)?)?;
                let a = build_subgroup("a", &base, raw.a)?;
                let b = build_subgroup("b", &base, raw.b)?;
                Group::Hnn(HnnGroup::new(base, a, b, window).map_err(|e| Error::Config(e.to_string()))?)
            }
            other => {
                return Err(Error::Config(format!(
                    "construction must be \"amalgam\" or \"hnn\", not \"{other}\""
                )))
            }
        };
        Ok(GroupConfig {
            id,
            window,
            ball_cap,
            search_bound,
            group,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Z2_Z3: &str = r#"
construction = "amalgam"
id = "z2_z3"
[g]
kind = "finite-table"
table = [[0, 1], [1, 0]]
names = ["e", "a"]
[h]
kind = "finite-table"
table = [[0, 1, 2], [1, 2, 0], [2, 0, 1]]
names = ["e", "b", "B"]
[a_g]
kind = "trivial"
[a_h]
kind = "trivial"
"#;

    const BS: &str = r#"
construction = "hnn"
id = "bs23"
window = 9
[base]
kind = "fg-abelian"
moduli = [0]
[a]
kind = "lattice"
generators = [[2]]
[b]
kind = "lattice"
generators = [[3]]
"#;

    #[test]
    fn parses_amalgam() {
        let c = GroupConfig::parse(Z2_Z3, None).unwrap();
        assert_eq!(c.id, "z2_z3");
        assert_eq!(c.window, DEFAULT_WINDOW);
        assert!(matches!(c.group, Group::Amalgam(_)));
    }

    #[test]
    fn parses_hnn_with_override() {
        let c = GroupConfig::parse(BS, Some(4)).unwrap();
        assert_eq!(c.window, 4);
        let Group::Hnn(g) = c.group else { panic!() };
        assert!(g.is_nonascending());
    }

    #[test]
    fn permutation_factors_and_named_subgroups() {
        let text = r#"
construction = "amalgam"
id = "s3"
[g]
kind = "finite-table"
permutations = [[1, 0, 2], [1, 2, 0]]
[h]
kind = "finite-table"
permutations = [[1, 0, 2], [1, 2, 0]]
[a_g]
kind = "finite"
elements = [0, 1]
[a_h]
kind = "finite"
elements = ["0", "1"]
"#;
        let c = GroupConfig::parse(text, None).unwrap();
        let Group::Amalgam(p) = c.group else { panic!() };
        assert!(p.is_nontrivial());
    }

    #[test]
    fn diagnostics() {
        let bad = |text: &str| match GroupConfig::parse(text, None) {
            Err(Error::Config(m)) => m,
            other => panic!("expected a config error, got {other:?}"),
        };
        assert!(bad("construction = 3").contains("line 1"));
        assert!(bad(&Z2_Z3.replace("[a_h]\nkind = \"trivial\"\n", "")).contains("a_h"));
        assert!(bad(&Z2_Z3.replace("\"amalgam\"", "\"tree\"")).contains("tree"));
        assert!(bad(&Z2_Z3.replace("[0, 1], [1, 0]", "[0, 1], [0, 1]")).contains("[g]"));
        assert!(bad(&BS.replace("[[3]]", "[[3], [1]]")).contains("generators"));
        assert!(GroupConfig::parse(Z2_Z3, Some(0)).is_err());
        assert!(bad(&format!("bogus = 1\n{Z2_Z3}")).contains("bogus"));
        assert!(bad(&format!("{Z2_Z3}\nbogus = 1\n")).contains("bogus"));
    }
}
