use std::path::Path;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use freecon::amalgam::{AmalgamGroup, Side};
use freecon::config::{Group, GroupConfig};
use freecon::genericity::{fs_type_census_capped, generosity_escapee_capped, verify_lemma1_capped};
use freecon::hnn::HnnGroup;
use freecon::witness::{Exponents, Schedule};
use freecon::{Error, FreeConstruction};

use crate::{Command, Global};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    Error,
}

/// Everything a run produced. `lines` is the human-readable answer;
/// commands that build reports carry the report in `payload` and print it
/// as JSON.
#[derive(Clone, Debug, Serialize)]
pub struct RunResult {
    pub command: Vec<String>,
    pub config_digest: Option<String>,
    pub outcome: Outcome,
    pub exit_code: u8,
    pub payload: Value,
    #[serde(skip)]
    pub lines: Vec<String>,
    #[serde(skip)]
    pub is_report: bool,
    #[serde(skip)]
    pub diagnostic: Option<String>,
}

impl RunResult {
    fn new(command: &Command, digest: Option<String>) -> RunResult {
        RunResult {
            command: echo(command),
            config_digest: digest,
            outcome: Outcome::Pass,
            exit_code: 0,
            payload: Value::Null,
            lines: Vec::new(),
            is_report: false,
            diagnostic: None,
        }
    }

    fn error(mut self, code: u8, message: String) -> RunResult {
        self.outcome = Outcome::Error;
        self.exit_code = code;
        self.payload = json!({ "error": message });
        self.lines.clear();
        self.is_report = false;
        self.diagnostic = Some(format!("error: {message}"));
        self
    }

    pub fn usage_error(command: &Command, message: String) -> RunResult {
        RunResult::new(command, None).error(2, message)
    }

    fn fail(mut self) -> RunResult {
        self.outcome = Outcome::Fail;
        self.exit_code = 1;
        self
    }

    fn text(mut self, lines: Vec<String>, payload: Value) -> RunResult {
        self.lines = lines;
        self.payload = payload;
        self
    }

    fn report<T: Serialize>(mut self, report: &T) -> RunResult {
        self.payload = serde_json::to_value(report).expect("reports serialize");
        self.is_report = true;
        self
    }

    /// Standard-output form without `--json`.
    pub fn rendered(&self) -> String {
        if self.is_report {
            return freecon::genericity::to_json(&self.payload);
        }
        let mut s = self.lines.join("\n");
        if !s.is_empty() {
            s.push('\n');
        }
        s
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Reduce { .. } => "reduce",
        Command::Classify { .. } => "classify",
        Command::Conjugate { .. } => "conjugate",
        Command::Roots { .. } => "roots",
        Command::Witness { .. } => "witness",
        Command::Verify { .. } => "verify",
        Command::Census { .. } => "census",
        Command::Generosity { .. } => "generosity",
        Command::Detect { .. } => "detect",
    }
}

/// Process arguments, or the subcommand name when there are none.
fn echo(command: &Command) -> Vec<String> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    if args.is_empty() {
        vec![command_name(command).to_string()]
    } else {
        args
    }
}

fn config_path(c: &Command) -> &Path {
    match c {
        Command::Reduce { config, .. }
        | Command::Classify { config, .. }
        | Command::Conjugate { config, .. }
        | Command::Roots { config, .. }
        | Command::Witness { config, .. }
        | Command::Verify { config, .. }
        | Command::Census { config, .. }
        | Command::Generosity { config, .. }
        | Command::Detect { config } => config,
    }
}

/// Exit code for a library error: degenerate input and exhausted
/// escalation are verified negatives, everything else is a usage or
/// configuration problem.
pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Degenerate(_) | Error::EscalationCap { .. } => 1,
        _ => 2,
    }
}

fn describe(e: &Error) -> String {
    match e {
        Error::Degenerate(m) if m.contains("dihedral") => {
            "degenerate: dihedral case (G = H = Z/2, A trivial), no witness exists".into()
        }
        Error::Degenerate(m) => format!("degenerate: {m}"),
        other => other.to_string(),
    }
}

pub fn digest(bytes: &[u8]) -> String {
    format!("sha256:{:x}", Sha256::digest(bytes))
}

pub fn run(global: &Global, command: &Command) -> RunResult {
    let path = config_path(command);
    let bytes = match std::fs::read(path) {
        Ok(b) => b,
        Err(e) => return RunResult::usage_error(command, format!("cannot read {}: {e}", path.display())),
    };
    let base = RunResult::new(command, Some(digest(&bytes)));
    let text = match String::from_utf8(bytes) {
        Ok(t) => t,
        Err(_) => return base.error(2, format!("{} is not valid UTF-8", path.display())),
    };
    let config = match GroupConfig::parse(&text, global.window) {
        Ok(c) => c,
        Err(e) => return base.error(2, format!("{}: {e}", path.display())),
    };
    let ctx = Context {
        global,
        config: &config,
        started: Instant::now(),
    };
    let result = match (&config.group, command) {
        (Group::Amalgam(p), Command::Detect { .. }) => Ok(detect_amalgam(p, base.clone())),
        (Group::Hnn(g), Command::Detect { .. }) => Ok(detect_hnn(g, base.clone())),
        (Group::Amalgam(p), c) => ctx.dispatch(p, c, base.clone()),
        (Group::Hnn(g), c) => ctx.dispatch(g, c, base.clone()),
    };
    result.unwrap_or_else(|e| base.error(exit_code(&e), describe(&e)))
}

struct Context<'a> {
    global: &'a Global,
    config: &'a GroupConfig,
    started: Instant,
}

impl Context<'_> {
    fn elapsed(&self) -> Option<u64> {
        self.global
            .timing
            .then(|| self.started.elapsed().as_millis().try_into().unwrap_or(u64::MAX))
    }

    fn dispatch<C: FreeConstruction>(
        &self,
        group: &C,
        command: &Command,
        base: RunResult,
    ) -> freecon::Result<RunResult> {
        let cfg = self.config;
        let digest = base.config_digest.clone();
        match command {
            Command::Reduce { word, .. } => {
                let x = group.parse_word(word)?;
                let (s, len) = (group.format(&x), group.length(&x));
                Ok(base.text(
                    vec![format!("{s} ({} {len})", group.length_name())],
                    json!({ "normal_form": s, group.length_name(): len }),
                ))
            }
            Command::Classify { word, .. } => {
                let x = group.parse_word(word)?;
                let (conj, core) = group.cyclic_form(&x);
                let kind = if group.is_elliptic(&x) {
                    "elliptic"
                } else {
                    "hyperbolic"
                };
                let (core_s, conj_s) = (group.format(&core), group.format(&conj));
                Ok(base.text(
                    vec![
                        kind.to_string(),
                        format!("core: {core_s} ({} {})", group.length_name(), group.length(&core)),
                        format!("conjugator: {conj_s}"),
                    ],
                    json!({ "class": kind, "core": core_s, "core_length": group.length(&core), "conjugator": conj_s }),
                ))
            }
            Command::Conjugate { x, y, .. } => {
                let (x, y) = (group.parse_word(x)?, group.parse_word(y)?);
                match group.are_conjugate(&x, &y)? {
                    Some(c) => {
                        let s = group.format(&c);
                        Ok(base.text(
                            vec!["conjugate".into(), format!("conjugator: {s}")],
                            json!({ "conjugate": true, "conjugator": s }),
                        ))
                    }
                    None => Ok(base
                        .text(
                            vec!["not conjugate".into()],
                            json!({ "conjugate": false, "conjugator": null }),
                        )
                        .fail()),
                }
            }
            Command::Roots {
                word, d, search_bound, ..
            } => {
                let x = group.parse_word(word)?;
                let bound = search_bound.unwrap_or(cfg.search_bound);
                let test = group.is_dth_power(&x, *d)?;
                let set = group.dth_roots(&x, *d, bound)?;
                let roots: Vec<String> = set.roots.iter().map(|r| group.format(r)).collect();
                let mut lines = vec![format!(
                    "{} {} root(s) of degree {d}{}",
                    if test.is_power { "power:" } else { "not a power:" },
                    roots.len(),
                    if set.exact { "" } else { " (within window)" }
                )];
                lines.extend(roots.iter().cloned());
                Ok(base.text(
                    lines,
                    json!({ "d": d, "is_power": test.is_power, "roots": roots, "exact": set.exact && test.exact }),
                ))
            }
            Command::Witness {
                d, n, level, classical, ..
            } => {
                freecon::construction::check_degree(*d)?;
                let (w, e) = if *classical {
                    let e = Exponents::classical(*n);
                    (group.witness_with(e)?, e)
                } else {
                    group.witness(*d, *n, *level)?
                };
                let s = group.format(&w);
                Ok(base.text(
                    vec![
                        s.clone(),
                        format!("{} {}", group.length_name(), group.length(&w)),
                        format!("exponents: alpha = {}, beta = {}", e.alpha, e.beta),
                    ],
                    json!({ "witness": s, "length": group.length(&w), "exponents": e }),
                ))
            }
            Command::Verify {
                d,
                n,
                classical,
                alpha,
                beta,
                ..
            } => {
                let schedule = match (classical, alpha, beta) {
                    (true, _, _) => Schedule::Fixed(Exponents::classical(*n)),
                    (false, Some(alpha), Some(beta)) => Schedule::Fixed(Exponents {
                        alpha: *alpha,
                        beta: *beta,
                    }),
                    _ => Schedule::Escalating,
                };
                let mut r = verify_lemma1_capped(group, &cfg.id, cfg.window, *d, *n, schedule, cfg.ball_cap)?;
                r.config_digest = digest;
                r.elapsed_ms = self.elapsed();
                let pass = r.pass;
                let out = base.report(&r);
                Ok(if pass {
                    out
                } else {
                    let mut out = out.fail();
                    out.diagnostic = Some("verification failed: some product is elliptic or a d-th power".into());
                    out
                })
            }
            Command::Census { d, radius, .. } => {
                let mut r = fs_type_census_capped(group, &cfg.id, cfg.window, *d, *radius, cfg.ball_cap)?;
                r.config_digest = digest;
                r.elapsed_ms = self.elapsed();
                Ok(base.report(&r))
            }
            Command::Generosity { m, big_n, .. } => {
                let mut r = generosity_escapee_capped(group, &cfg.id, cfg.window, *m, *big_n, cfg.ball_cap)?;
                r.config_digest = digest;
                r.elapsed_ms = self.elapsed();
                let found = r.escapee.is_some();
                let out = base.report(&r);
                Ok(if found { out } else { out.fail() })
            }
            Command::Detect { .. } => unreachable!("handled per construction"),
        }
    }
}

fn detect_amalgam(p: &AmalgamGroup, base: RunResult) -> RunResult {
    let nontrivial = p.is_nontrivial();
    let mut lines = vec![if nontrivial {
        "non-trivial amalgam".to_string()
    } else {
        "trivial amalgam: A is not proper in both factors".to_string()
    }];
    let dihedral = p.is_dihedral();
    let strict = p.nondegenerate_witnesses();
    let mut witnesses = Value::Null;
    let degenerate = !nontrivial || strict.is_none();
    if dihedral {
        lines.push("degenerate: dihedral case (G = H = Z/2, A trivial)".into());
    } else if let Some(t) = &strict {
        let (sg, sh) = if t.swapped {
            (Side::H, Side::G)
        } else {
            (Side::G, Side::H)
        };
        let (g, h, h2) = (
            p.factor(sg).format(&t.g),
            p.factor(sh).format(&t.h),
            p.factor(sh).format(&t.h_prime),
        );
        lines.push("non-degenerate".into());
        lines.push(format!("witnesses: g = {g} ({sg}), h = {h} ({sh}), h' = {h2} ({sh})"));
        witnesses = json!({ "g": g, "h": h, "h_prime": h2, "g_side": sg.to_string() });
    } else {
        lines.push("degenerate: no factor has two double cosets of A outside A".into());
        if let Ok(t) = p.witness_triple() {
            let (sg, sh) = if t.swapped {
                (Side::H, Side::G)
            } else {
                (Side::G, Side::H)
            };
            lines.push(format!(
                "witness letters (distinct right cosets): g = {} ({sg}), h = {} ({sh}), h' = {} ({sh})",
                p.factor(sg).format(&t.g),
                p.factor(sh).format(&t.h),
                p.factor(sh).format(&t.h_prime),
            ));
        }
    }
    base.text(
        lines,
        json!({
            "nontrivial": nontrivial,
            "degenerate": degenerate,
            "dihedral": dihedral,
            "witnesses": witnesses,
        }),
    )
}

fn detect_hnn(g: &HnnGroup, base: RunResult) -> RunResult {
    match g.nonascending_witness() {
        Ok(w) => {
            let s = g.base().format(&w);
            base.text(
                vec!["non-ascending".into(), format!("witness: g = {s}")],
                json!({ "nonascending": true, "witness": s }),
            )
        }
        Err(e) => {
            let ascending = !g.is_nonascending();
            base.text(
                vec![if ascending {
                    "ascending: A or B is the whole base group".to_string()
                } else {
                    format!("non-ascending, no witness found: {e}")
                }],
                json!({ "nonascending": !ascending, "witness": null }),
            )
        }
    }
}
