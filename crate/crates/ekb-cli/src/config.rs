//! Line-based `key = value` settings, with command-line flags taking
//! precedence over the file.
//!
//! Recognized keys: `store_path`, `capture_path`, `scanner_db_path`,
//! `seed`, plus the evaluation keys consumed by `simulate` (`agents`,
//! `scanners`, `schedule`, `encryption`, repeated `text` and `keyword`
//! lines, and the numeric payload/render settings). Blank lines and `#`
//! comments are ignored; repeated keys accumulate.

use std::path::{Path, PathBuf};

use ekb_core::crypto::MediaType;
use ekb_core::css::{EvalConfig, ScannerConfig, ScannerRules};

use crate::error::CliError;

#[derive(Debug, Default)]
pub struct Settings {
    pub store_path: PathBuf,
    pub capture_path: PathBuf,
    pub scanner_db_path: Option<PathBuf>,
    pub seed: Option<u64>,
    pairs: Vec<(String, String)>,
}

pub struct Overrides {
    pub store: Option<PathBuf>,
    pub capture: Option<PathBuf>,
    pub db: Option<PathBuf>,
    pub seed: Option<u64>,
}

impl Settings {
    pub fn load(config_file: Option<&Path>, overrides: Overrides) -> Result<Settings, CliError> {
        let mut settings = Settings {
            store_path: PathBuf::from("contacts.json"),
            capture_path: PathBuf::from("frame.pgm"),
            scanner_db_path: None,
            seed: None,
            pairs: Vec::new(),
        };
        if let Some(path) = config_file {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::io(format!("cannot read {}: {e}", path.display())))?;
            settings.pairs = parse_pairs(&text, path)?;
            for (key, value) in &settings.pairs {
                match key.as_str() {
                    "store_path" => settings.store_path = PathBuf::from(value),
                    "capture_path" => settings.capture_path = PathBuf::from(value),
                    "scanner_db_path" => settings.scanner_db_path = Some(PathBuf::from(value)),
                    "seed" => {
                        settings.seed = Some(value.parse().map_err(|_| {
                            CliError::usage("BadConfig", format!("seed {value:?} is not an integer"))
                        })?)
                    }
                    _ => {} // evaluation keys are consumed by eval_config
                }
            }
        }
        if let Some(store) = overrides.store {
            settings.store_path = store;
        }
        if let Some(capture) = overrides.capture {
            settings.capture_path = capture;
        }
        if let Some(db) = overrides.db {
            settings.scanner_db_path = Some(db);
        }
        if let Some(seed) = overrides.seed {
            settings.seed = Some(seed);
        }
        Ok(settings)
    }

    /// The evaluation matrix configuration: defaults overlaid with any
    /// evaluation keys from the settings file.
    pub fn eval_config(&self) -> Result<EvalConfig, CliError> {
        let mut config = EvalConfig::default();
        let bad = |key: &str, value: &str, what: &str| {
            CliError::usage("BadConfig", format!("{key} = {value:?}: {what}"))
        };

        let mut texts = Vec::new();
        let mut keywords = Vec::new();
        for (key, value) in &self.pairs {
            match key.as_str() {
                "agents" => {
                    config.agents = value.split(',').map(|a| a.trim().to_string()).collect()
                }
                "scanners" => {
                    config.scanners = value
                        .split(',')
                        .map(|s| parse_scanner(s.trim()))
                        .collect::<Result<_, _>>()
                        .map_err(|e| bad(key, value, &e))?
                }
                "schedule" => {
                    config.schedule = value
                        .split(',')
                        .map(|m| m.trim().parse::<MediaType>())
                        .collect::<Result<_, _>>()
                        .map_err(|e| bad(key, value, &e))?
                }
                "encryption" => {
                    config.encryption_enabled = match value.as_str() {
                        "on" | "true" | "enabled" => true,
                        "off" | "false" | "disabled" => false,
                        _ => return Err(bad(key, value, "expected on or off")),
                    }
                }
                "text" => texts.push(value.clone()),
                "keyword" => keywords.push(value.clone()),
                "audio_size" | "voice_memo_size" | "video_size" | "image_width"
                | "image_height" | "render_scale" | "wrap_width" => {
                    let n: usize = value
                        .parse()
                        .map_err(|_| bad(key, value, "expected an integer"))?;
                    match key.as_str() {
                        "audio_size" => config.audio_size = n,
                        "voice_memo_size" => config.voice_memo_size = n,
                        "video_size" => config.video_size = n,
                        "image_width" => config.image_width = n,
                        "image_height" => config.image_height = n,
                        "render_scale" => config.render_scale = n,
                        _ => config.wrap_width = n,
                    }
                }
                _ => {} // path/seed keys handled in load
            }
        }
        if !texts.is_empty() {
            config.text_corpus = texts;
        }
        if !keywords.is_empty() {
            config.keywords = keywords;
        }
        Ok(config)
    }
}

fn parse_pairs(text: &str, path: &Path) -> Result<Vec<(String, String)>, CliError> {
    let mut pairs = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(CliError::usage(
                "BadConfig",
                format!("{}:{}: expected key = value", path.display(), lineno + 1),
            ));
        };
        pairs.push((key.trim().to_string(), value.trim().to_string()));
    }
    Ok(pairs)
}

/// Either one of the stock scanner names or `name:rule+rule` with rules
/// from {exact, perceptual, keyword}.
fn parse_scanner(spec: &str) -> Result<ScannerConfig, String> {
    if let Some((name, rules)) = spec.split_once(':') {
        let mut r = ScannerRules {
            exact: false,
            perceptual: false,
            keyword: false,
        };
        for part in rules.split('+') {
            match part.trim() {
                "exact" => r.exact = true,
                "perceptual" => r.perceptual = true,
                "keyword" => r.keyword = true,
                other => return Err(format!("unknown rule {other:?}")),
            }
        }
        return Ok(ScannerConfig::new(name.trim(), r));
    }
    match spec {
        "exact-match" => Ok(ScannerConfig::new(
            spec,
            ScannerRules {
                exact: true,
                perceptual: false,
                keyword: false,
            },
        )),
        "keyword-filter" => Ok(ScannerConfig::new(
            spec,
            ScannerRules {
                exact: false,
                perceptual: false,
                keyword: true,
            },
        )),
        "full-scan" => Ok(ScannerConfig::new(
            spec,
            ScannerRules {
                exact: true,
                perceptual: true,
                keyword: true,
            },
        )),
        other => Err(format!("unknown scanner {other:?}")),
    }
}
