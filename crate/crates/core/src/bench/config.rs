//! Run configuration: a plain `key = value` file with `#` comments.
//!
//! ```text
//! corpus   = fixtures, photos/kodim01.ppm
//! logo     = builtin:random:7
//! attacks  = jpeg:q=90; gn:var=0.001; mf:w=3
//! beta_u   = 0.7
//! seed     = 7
//! csv      = out/run.csv
//! markdown = out/run.md
//! ```
//!
//! Relative paths are resolved against the directory of the config file.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::attacks::AttackSpec;
use crate::codec::EmbedConfig;
use crate::error::{Error, Result};
use crate::image_io::{
    default_corpus, read_logo, read_ppm, synth_fixture, FixtureKind, PlanarImage, WatermarkLogo,
};

/// Attack settings run when a config names none.
pub const DEFAULT_ATTACKS: [&str; 9] = [
    "jpeg:q=100",
    "jpeg:q=90",
    "jpeg:q=70",
    "gn:var=0.001",
    "sp:d=0.001",
    "sp:d=0.006",
    "mf:w=3",
    "gf:w=3,sigma=0.5",
    "sh:amount=1",
];

/// One host image of a run.
#[derive(Clone, Debug, PartialEq)]
pub enum CorpusEntry {
    Path(PathBuf),
    Fixture(FixtureKind),
}

impl CorpusEntry {
    /// Name used in report rows.
    pub fn name(&self) -> String {
        match self {
            CorpusEntry::Path(p) => p.display().to_string(),
            CorpusEntry::Fixture(k) => format!("fixture:{k}"),
        }
    }

    pub fn load(&self, fixture_size: usize) -> Result<PlanarImage> {
        match self {
            CorpusEntry::Path(p) => read_ppm(p),
            CorpusEntry::Fixture(k) => synth_fixture(*k, fixture_size, fixture_size),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum LogoSource {
    Path(PathBuf),
    Ones,
    Zeros,
    Checker,
    Random(u64),
}

impl LogoSource {
    /// `builtin:ones`, `builtin:zeros`, `builtin:checker`,
    /// `builtin:random[:seed]` or a file path.
    pub fn parse(s: &str, seed: u64, base: Option<&Path>) -> Result<Self> {
        let Some(name) = s.strip_prefix("builtin:") else {
            return Ok(LogoSource::Path(resolve(base, s)));
        };
        match name.split_once(':') {
            None if name == "ones" => Ok(LogoSource::Ones),
            None if name == "zeros" => Ok(LogoSource::Zeros),
            None if name == "checker" => Ok(LogoSource::Checker),
            None if name == "random" => Ok(LogoSource::Random(seed)),
            Some(("random", n)) => n
                .parse()
                .map(LogoSource::Random)
                .map_err(|_| Error::Config(format!("bad logo seed {n:?}"))),
            _ => Err(Error::Config(format!("unknown builtin logo {s:?}"))),
        }
    }

    pub fn load(&self) -> Result<WatermarkLogo> {
        Ok(match self {
            LogoSource::Path(p) => read_logo(p)?,
            LogoSource::Ones => WatermarkLogo::ones(),
            LogoSource::Zeros => WatermarkLogo::zeros(),
            LogoSource::Checker => WatermarkLogo::checkerboard(),
            LogoSource::Random(seed) => WatermarkLogo::random(*seed),
        })
    }
}

impl std::fmt::Display for LogoSource {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LogoSource::Path(p) => write!(f, "{}", p.display()),
            LogoSource::Ones => f.write_str("builtin:ones"),
            LogoSource::Zeros => f.write_str("builtin:zeros"),
            LogoSource::Checker => f.write_str("builtin:checker"),
            LogoSource::Random(seed) => write!(f, "builtin:random:{seed}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub corpus: Vec<CorpusEntry>,
    pub logo: LogoSource,
    pub embed: EmbedConfig,
    /// Attacks run after the implicit no-attack row.
    pub attacks: Vec<AttackSpec>,
    pub csv: Option<PathBuf>,
    pub markdown: Option<PathBuf>,
    pub gnuplot: Option<PathBuf>,
    pub seed: u64,
    /// Side length of synthesized fixtures.
    pub fixture_size: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig::with_corpus(
            default_corpus()
                .into_iter()
                .map(CorpusEntry::Fixture)
                .collect(),
        )
    }
}

fn resolve(base: Option<&Path>, s: &str) -> PathBuf {
    let p = PathBuf::from(s);
    match base {
        Some(b) if p.is_relative() => b.join(p),
        _ => p,
    }
}

fn list(value: &str, sep: char) -> impl Iterator<Item = &str> {
    value.split(sep).map(str::trim).filter(|s| !s.is_empty())
}

fn coeff(value: &str) -> Option<(usize, usize)> {
    let (r, c) = value
        .trim_matches(|c| c == '(' || c == ')')
        .split_once(',')?;
    Some((r.trim().parse().ok()?, c.trim().parse().ok()?))
}

/// Applies one embedding key; `Ok(false)` when `key` is not an embedding key.
fn set_embed_key(e: &mut EmbedConfig, key: &str, v: &str) -> Result<bool> {
    let err = || Error::Config(format!("bad {key} {v:?}"));
    let float = || v.parse::<f64>().map_err(|_| err());
    match key {
        "beta_y" => e.beta_y = float()?,
        "beta_u" => e.beta_u = float()?,
        "beta_v" => e.beta_v = float()?,
        "alpha_floor" => e.alpha_floor = float()?,
        "magnitude_floor" => e.magnitude_floor = float()?,
        "coeff_a" => e.coeff_a = coeff(v).ok_or_else(err)?,
        "coeff_b" => e.coeff_b = coeff(v).ok_or_else(err)?,
        "strength_rule" => e.strength_rule = v.parse()?,
        "color_space" => e.color_space = v.parse()?,
        "repair_rounds" => e.repair_rounds = v.parse().map_err(|_| err())?,
        "wavelet_levels" => e.wavelet_levels = v.parse().map_err(|_| err())?,
        _ => return Ok(false),
    }
    Ok(true)
}

const RUN_KEYS: [&str; 9] = [
    "seed",
    "corpus",
    "logo",
    "attacks",
    "attack",
    "csv",
    "markdown",
    "gnuplot",
    "fixture_size",
];

/// Reads only the embedding keys of a config file; run keys are ignored, so
/// one file can drive both `bench` and single-image commands.
pub fn parse_embed_config(text: &str) -> Result<EmbedConfig> {
    let mut cfg = EmbedConfig::default();
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("line {}: expected key = value", n + 1)))?;
        let (k, v) = (k.trim(), v.trim());
        let known = set_embed_key(&mut cfg, k, v)
            .map_err(|e| Error::Config(format!("line {}: {e}", n + 1)))?;
        if !known && !RUN_KEYS.contains(&k) {
            return Err(Error::Config(format!("line {}: unknown key {k:?}", n + 1)));
        }
    }
    cfg.validate()?;
    Ok(cfg)
}

impl RunConfig {
    /// Default settings over the given corpus, seed 0, the default attacks.
    pub fn with_corpus(corpus: Vec<CorpusEntry>) -> Self {
        RunConfig {
            corpus,
            logo: LogoSource::Random(0),
            embed: EmbedConfig::default(),
            attacks: DEFAULT_ATTACKS
                .iter()
                .map(|s| AttackSpec::parse_with_seed(s, 0).expect("built-in attack"))
                .collect(),
            csv: None,
            markdown: None,
            gnuplot: None,
            seed: 0,
            fixture_size: 512,
        }
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text, path.parent())
    }

    /// Parses config text; relative paths are joined onto `base`.
    pub fn parse(text: &str, base: Option<&Path>) -> Result<Self> {
        let mut pairs = Vec::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key = value", n + 1)))?;
            pairs.push((n + 1, k.trim().to_string(), v.trim().to_string()));
        }
        let mut cfg = RunConfig::with_corpus(Vec::new());
        // seed first: attacks and the random logo default to it
        for (_, k, v) in &pairs {
            if k == "seed" {
                cfg.seed = v
                    .parse()
                    .map_err(|_| Error::Config(format!("bad seed {v:?}")))?;
            }
        }
        cfg.logo = LogoSource::Random(cfg.seed);
        let mut attacks: Option<Vec<AttackSpec>> = None;
        for (line, k, v) in pairs {
            let err = |what: &str| Error::Config(format!("line {line}: bad {what} {v:?}"));
            match k.as_str() {
                "seed" => {}
                "corpus" => {
                    for item in list(&v, ',') {
                        if item == "fixtures" {
                            cfg.corpus
                                .extend(default_corpus().into_iter().map(CorpusEntry::Fixture));
                        } else if let Some(name) = item.strip_prefix("fixture:") {
                            cfg.corpus.push(CorpusEntry::Fixture(name.parse()?));
                        } else {
                            cfg.corpus.push(CorpusEntry::Path(resolve(base, item)));
                        }
                    }
                }
                "logo" => cfg.logo = LogoSource::parse(&v, cfg.seed, base)?,
                "attacks" | "attack" => {
                    let dst = attacks.get_or_insert_with(Vec::new);
                    for item in list(&v, ';') {
                        if item == "default" {
                            for s in DEFAULT_ATTACKS {
                                dst.push(AttackSpec::parse_with_seed(s, cfg.seed)?);
                            }
                        } else {
                            dst.push(
                                AttackSpec::parse_with_seed(item, cfg.seed)
                                    .map_err(|e| Error::Config(format!("line {line}: {e}")))?,
                            );
                        }
                    }
                }
                "csv" => cfg.csv = Some(resolve(base, &v)),
                "markdown" => cfg.markdown = Some(resolve(base, &v)),
                "gnuplot" => cfg.gnuplot = Some(resolve(base, &v)),
                "fixture_size" => cfg.fixture_size = v.parse().map_err(|_| err("fixture_size"))?,
                other => {
                    if !set_embed_key(&mut cfg.embed, other, &v)
                        .map_err(|e| Error::Config(format!("line {line}: {e}")))?
                    {
                        return Err(Error::Config(format!("line {line}: unknown key {other:?}")));
                    }
                }
            }
        }
        if let Some(a) = attacks {
            cfg.attacks = a;
        } else {
            cfg.attacks = DEFAULT_ATTACKS
                .iter()
                .map(|s| AttackSpec::parse_with_seed(s, cfg.seed))
                .collect::<Result<_>>()?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.corpus.is_empty() {
            return Err(Error::Config("corpus is empty".into()));
        }
        if self.attacks.is_empty() {
            return Err(Error::Config("attack list is empty".into()));
        }
        if self.fixture_size == 0 || !self.fixture_size.is_multiple_of(16) {
            return Err(Error::Config(format!(
                "fixture_size must be a positive multiple of 16, got {}",
                self.fixture_size
            )));
        }
        for a in &self.attacks {
            a.validate()?;
        }
        self.embed.validate()
    }

    /// Canonical `key = value` text; parsing it gives back an equal config
    /// (paths are printed as stored).
    pub fn to_config_text(&self) -> String {
        let e = &self.embed;
        let mut s = String::new();
        let corpus: Vec<String> = self
            .corpus
            .iter()
            .map(|c| match c {
                CorpusEntry::Path(p) => p.display().to_string(),
                CorpusEntry::Fixture(k) => format!("fixture:{k}"),
            })
            .collect();
        let attacks: Vec<String> = self.attacks.iter().map(|a| a.to_string()).collect();
        let _ = writeln!(s, "seed = {}", self.seed);
        let _ = writeln!(s, "corpus = {}", corpus.join(", "));
        let _ = writeln!(s, "fixture_size = {}", self.fixture_size);
        let _ = writeln!(s, "logo = {}", self.logo);
        let _ = writeln!(s, "attacks = {}", attacks.join("; "));
        let _ = writeln!(s, "beta_y = {}", e.beta_y);
        let _ = writeln!(s, "beta_u = {}", e.beta_u);
        let _ = writeln!(s, "beta_v = {}", e.beta_v);
        let _ = writeln!(s, "alpha_floor = {}", e.alpha_floor);
        let _ = writeln!(s, "magnitude_floor = {}", e.magnitude_floor);
        let _ = writeln!(s, "coeff_a = {},{}", e.coeff_a.0, e.coeff_a.1);
        let _ = writeln!(s, "coeff_b = {},{}", e.coeff_b.0, e.coeff_b.1);
        let _ = writeln!(s, "strength_rule = {}", e.strength_rule);
        let _ = writeln!(s, "color_space = {}", e.color_space);
        let _ = writeln!(s, "repair_rounds = {}", e.repair_rounds);
        let _ = writeln!(s, "wavelet_levels = {}", e.wavelet_levels);
        for (key, path) in [
            ("csv", &self.csv),
            ("markdown", &self.markdown),
            ("gnuplot", &self.gnuplot),
        ] {
            if let Some(p) = path {
                let _ = writeln!(s, "{key} = {}", p.display());
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::ColorSpace;

    #[test]
    fn parses_full_file() {
        let text = "\
# sample run
seed = 7
corpus = fixtures, fixture:noise-9, imgs/a.ppm
logo = builtin:checker
attacks = jpeg:q=90; gn:var=0.001   # noise takes the run seed
attack = mf:w=3
beta_y = 0.2
beta_u = 0.8
beta_v = 0.9
coeff_a = (4, 3)
coeff_b = 3,4
color_space = rgb
csv = out.csv
";
        let cfg = RunConfig::parse(text, Some(Path::new("/base"))).unwrap();
        assert_eq!(cfg.seed, 7);
        assert_eq!(cfg.corpus.len(), 10);
        assert_eq!(cfg.corpus[8], CorpusEntry::Fixture(FixtureKind::Noise(9)));
        assert_eq!(cfg.corpus[9], CorpusEntry::Path("/base/imgs/a.ppm".into()));
        assert_eq!(cfg.logo, LogoSource::Checker);
        assert_eq!(cfg.attacks.len(), 3);
        assert_eq!(
            cfg.attacks[1],
            AttackSpec::GaussianNoise {
                variance: 0.001,
                seed: 7
            }
        );
        assert_eq!(cfg.embed.coeff_a, (4, 3));
        assert_eq!(cfg.embed.color_space, ColorSpace::Rgb);
        assert_eq!(cfg.csv, Some(PathBuf::from("/base/out.csv")));
    }

    #[test]
    fn missing_attacks_fall_back_to_default_battery() {
        let cfg = RunConfig::parse("corpus = fixture:rings\nseed = 3", None).unwrap();
        assert_eq!(cfg.attacks.len(), DEFAULT_ATTACKS.len());
        assert_eq!(cfg.logo, LogoSource::Random(3));
    }

    #[test]
    fn rejects_bad_input() {
        for text in [
            "",
            "corpus = fixtures\nbogus = 1",
            "corpus = fixtures\nattacks = ",
            "corpus = fixtures\nbeta_y = abc",
            "corpus = fixtures\nbeta_y = 0.9\nbeta_u = 0.5",
            "corpus = fixture:nope",
            "corpus = fixtures\nlogo = builtin:stars",
            "corpus = fixtures\nno equals sign",
        ] {
            assert!(
                matches!(RunConfig::parse(text, None), Err(e) if e.is_input_error()),
                "{text:?}"
            );
        }
    }

    #[test]
    fn embed_keys_alone() {
        let e = parse_embed_config("beta_y = 0.1\ncorpus = fixtures\ncolor_space = rgb").unwrap();
        assert_eq!(e.beta_y, 0.1);
        assert_eq!(e.color_space, ColorSpace::Rgb);
        assert!(parse_embed_config("beta = 1").is_err());
    }

    #[test]
    fn text_round_trips() {
        let mut cfg = RunConfig::parse(
            "corpus = fixtures, /tmp/x.ppm\nlogo = builtin:random:5\nattacks = default; sh:amount=0.5\nseed = 11\nmarkdown = /tmp/r.md",
            None,
        )
        .unwrap();
        cfg.embed.magnitude_floor = 123.5;
        let again = RunConfig::parse(&cfg.to_config_text(), None).unwrap();
        assert_eq!(again, cfg);
    }
}
