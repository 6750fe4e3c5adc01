//! Command-line front end: embed, extract, attack, score and benchmark.
//!
//! Exit status is 0 on success, 2 for usage and input errors (bad flags,
//! unreadable or malformed files, invalid parameters) and 1 for anything else.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use yuvmark::bench::{
    compare_color_spaces, parse_embed_config, run_benchmark, write_outputs, write_paired_outputs,
    RunConfig,
};
use yuvmark::image_io::{read_logo, read_ppm, synth_fixture, write_logo, write_ppm, FixtureKind};
use yuvmark::metrics::{quality, robustness};
use yuvmark::{
    apply_attack, embed, extract_maps, vote, AttackSpec, ColorSpace, EmbedConfig, Error,
    StrengthRule,
};

#[derive(Parser)]
#[command(
    name = "yuvmark",
    version,
    about = "Blind DWT/DCT watermarking of color images"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Hide a 32x32 logo in an RGB PPM image.
    Embed {
        #[arg(long)]
        host: PathBuf,
        /// Logo as a 32-line text grid of 0/1 or a PGM/PPM raster.
        #[arg(long)]
        logo: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        embed: EmbedFlags,
    },
    /// Recover the logo from a watermarked image.
    Extract {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Also write the four per-site maps into this directory.
        #[arg(long)]
        maps_dir: Option<PathBuf>,
        #[command(flatten)]
        embed: EmbedFlags,
    },
    /// Apply one attack, e.g. `jpeg:q=90` or `gn:var=0.001,seed=7`.
    Attack {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        attack: String,
        #[arg(long)]
        out: PathBuf,
        /// Seed for noise attacks that do not name one.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Compare logos (BER, NC) and/or images (PSNR, SSIM).
    Score {
        #[arg(long, requires = "extracted")]
        logo: Option<PathBuf>,
        #[arg(long, requires = "logo")]
        extracted: Option<PathBuf>,
        #[arg(long, requires = "marked")]
        host: Option<PathBuf>,
        #[arg(long, requires = "host")]
        marked: Option<PathBuf>,
    },
    /// Run a benchmark described by a config file.
    Bench {
        #[command(flatten)]
        run: RunFlags,
    },
    /// Run a benchmark in YUV and in RGB and pair the results.
    CompareColorspace {
        #[command(flatten)]
        run: RunFlags,
    },
    /// Write one of the synthetic test images.
    Fixture {
        /// gradient, checker, rings, noise-<seed> or composite-<seed>.
        #[arg(long)]
        kind: String,
        #[arg(long, default_value_t = 512)]
        size: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct RunFlags {
    #[arg(long)]
    config: PathBuf,
    /// Override the config's CSV path.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Override the config's Markdown path.
    #[arg(long)]
    markdown: Option<PathBuf>,
    /// Write a gnuplot script of mean BER per attack.
    #[arg(long = "emit-gnuplot")]
    gnuplot: Option<PathBuf>,
}

#[derive(Args)]
struct EmbedFlags {
    /// key = value file; flags given here override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    beta_y: Option<f64>,
    #[arg(long)]
    beta_u: Option<f64>,
    #[arg(long)]
    beta_v: Option<f64>,
    #[arg(long)]
    alpha_floor: Option<f64>,
    #[arg(long)]
    magnitude_floor: Option<f64>,
    /// `row,col` of the coefficient that dominates for a 1 bit.
    #[arg(long, value_parser = parse_coeff)]
    coeff_a: Option<(usize, usize)>,
    #[arg(long, value_parser = parse_coeff)]
    coeff_b: Option<(usize, usize)>,
    #[arg(long)]
    strength_rule: Option<StrengthRule>,
    #[arg(long)]
    color_space: Option<ColorSpace>,
    #[arg(long)]
    repair_rounds: Option<usize>,
}

fn parse_coeff(s: &str) -> Result<(usize, usize), String> {
    let (r, c) = s.split_once(',').ok_or("expected row,col")?;
    let num = |v: &str| v.trim().parse::<usize>().map_err(|e| e.to_string());
    Ok((num(r)?, num(c)?))
}

impl EmbedFlags {
    fn resolve(&self) -> Result<EmbedConfig, Error> {
        let mut cfg = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
                    path: path.clone(),
                    source: e,
                })?;
                parse_embed_config(&text)?
            }
            None => EmbedConfig::default(),
        };
        macro_rules! set {
            ($($field:ident),*) => {
                $(if let Some(v) = self.$field { cfg.$field = v; })*
            };
        }
        set!(
            beta_y,
            beta_u,
            beta_v,
            alpha_floor,
            magnitude_floor,
            coeff_a,
            coeff_b,
            strength_rule,
            color_space,
            repair_rounds
        );
        cfg.validate()?;
        Ok(cfg)
    }
}

impl RunFlags {
    fn resolve(&self) -> Result<RunConfig, Error> {
        let mut cfg = RunConfig::from_file(&self.config)?;
        if let Some(p) = &self.csv {
            cfg.csv = Some(p.clone());
        }
        if let Some(p) = &self.markdown {
            cfg.markdown = Some(p.clone());
        }
        if let Some(p) = &self.gnuplot {
            cfg.gnuplot = Some(p.clone());
        }
        Ok(cfg)
    }
}

fn site_file(dir: &Path, name: impl std::fmt::Display) -> PathBuf {
    dir.join(format!("{name}.txt"))
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Embed {
            host,
            logo,
            out,
            embed: flags,
        } => {
            let cfg = flags.resolve()?;
            let host = read_ppm(&host)?;
            let logo = read_logo(&logo)?;
            let marked = embed::<f64>(&host, &logo, &cfg)?;
            write_ppm(&marked.image, &out)?;
            let q = quality(&host, &marked.image)?;
            let r = &marked.report;
            println!("psnr {:.4} dB, ssim {:.6}", q.psnr, q.ssim);
            println!(
                "blocks {:?}, rewritten {:?}, clamped {}, repair passes {}",
                r.blocks_embedded,
                r.blocks_rewritten,
                r.clamped(),
                r.repair_passes
            );
            if r.cropped() {
                println!("logo cropped to {}x{}", r.extent.0, r.extent.1);
            }
            if r.residual_bit_errors > 0 {
                eprintln!(
                    "warning: {} map bit(s) do not survive rounding",
                    r.residual_bit_errors
                );
            }
        }
        Command::Extract {
            input,
            out,
            maps_dir,
            embed: flags,
        } => {
            let cfg = flags.resolve()?;
            let img = read_ppm(&input)?;
            let maps = extract_maps::<f64>(&img, &cfg)?;
            write_logo(&vote(&maps), &out)?;
            if let Some(dir) = maps_dir {
                std::fs::create_dir_all(&dir).map_err(|e| Error::Io {
                    path: dir.clone(),
                    source: e,
                })?;
                for (site, map) in maps.iter() {
                    write_logo(map, site_file(&dir, site))?;
                }
            }
        }
        Command::Attack {
            input,
            attack,
            out,
            seed,
        } => {
            let spec = AttackSpec::parse_with_seed(&attack, seed)?;
            let img = read_ppm(&input)?;
            write_ppm(&apply_attack(&img, &spec)?, &out)?;
        }
        Command::Score {
            logo,
            extracted,
            host,
            marked,
        } => {
            if logo.is_none() && host.is_none() {
                return Err(Error::InvalidParameter(
                    "give --logo/--extracted and/or --host/--marked".into(),
                ));
            }
            if let (Some(a), Some(b)) = (logo, extracted) {
                let s = robustness(&read_logo(&a)?, &read_logo(&b)?);
                println!("BER {:?}", s.ber);
                println!("NC literal {:?}", s.nc_literal);
                match s.nc_normalized {
                    Some(v) => println!("NC normalized {v:?}"),
                    None => println!("NC normalized n/a"),
                }
            }
            if let (Some(a), Some(b)) = (host, marked) {
                let q = quality(&read_ppm(&a)?, &read_ppm(&b)?)?;
                println!("PSNR {:?}", q.psnr);
                println!("SSIM {:?}", q.ssim);
            }
        }
        Command::Bench { run } => {
            let cfg = run.resolve()?;
            let report = run_benchmark(&cfg)?;
            write_outputs(&cfg, &report)?;
            for f in &report.failures {
                eprintln!("skipped {}: {}", f.image, f.error);
            }
            if cfg.csv.is_none() && cfg.markdown.is_none() {
                print!("{}", report.to_csv()?);
            } else {
                println!(
                    "{} rows over {} image(s)",
                    report.rows.len(),
                    report.transparency().count()
                );
            }
        }
        Command::CompareColorspace { run } => {
            let cfg = run.resolve()?;
            let report = compare_color_spaces(&cfg)?;
            write_paired_outputs(&cfg, &report)?;
            for f in &report.failures {
                eprintln!("skipped {}: {}", f.image, f.error);
            }
            if cfg.csv.is_none() && cfg.markdown.is_none() {
                print!("{}", report.to_csv()?);
            }
            let (wins, matched) = report.yuv_wins();
            println!("yuv psnr higher on {wins}/{matched} images");
        }
        Command::Fixture { kind, size, out } => {
            let kind: FixtureKind = kind.parse()?;
            write_ppm(&synth_fixture(kind, size, size)?, &out)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_input_error() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
