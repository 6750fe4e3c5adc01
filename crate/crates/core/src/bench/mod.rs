//! Corpus-level experiments: embed each host, attack it, extract, and score.

mod config;
mod report;

pub use config::{parse_embed_config, CorpusEntry, LogoSource, RunConfig, DEFAULT_ATTACKS};
pub use report::{
    mean_rows, BenchRow, ImageFailure, PairedReport, PairedRow, RobustnessReport, SideMetrics,
    CSV_COLUMNS, MEAN_ROW, PAIRED_CSV_COLUMNS,
};

use std::path::Path;

use rayon::prelude::*;

use crate::attacks::{apply_attack, AttackSpec};
use crate::codec::{embed, extract, ColorSpace, EmbedConfig};
use crate::error::{Error, Result};
use crate::image_io::WatermarkLogo;
use crate::metrics::{psnr, robustness, ssim};

fn bench_image(
    entry: &CorpusEntry,
    logo: &WatermarkLogo,
    embed_cfg: &EmbedConfig,
    attacks: &[AttackSpec],
    fixture_size: usize,
) -> Result<Vec<BenchRow>> {
    let name = entry.name();
    let host = entry.load(fixture_size)?;
    let marked = embed::<f64>(&host, logo, embed_cfg)?;
    // score against what the host can carry
    let reference = crate::codec::crop_logo(logo, marked.report.extent);
    let clamped = marked.report.clamped() as f64;
    std::iter::once(&AttackSpec::Identity)
        .chain(attacks.iter().filter(|a| **a != AttackSpec::Identity))
        .map(|attack| {
            let attacked = apply_attack(&marked.image, attack)?;
            let got = extract::<f64>(&attacked, embed_cfg)?;
            let scores = robustness(&reference, &got);
            Ok(BenchRow {
                image: name.clone(),
                attack: attack.kind().into(),
                param: attack.params(),
                psnr: psnr(&host, &attacked)?,
                ssim: ssim(&host, &attacked)?,
                ber: scores.ber,
                nc_literal: scores.nc_literal,
                nc_normalized: scores.nc_normalized,
                clamped_pixels: clamped,
            })
        })
        .collect()
}

/// Runs every image of the corpus through embed, the no-attack row and each
/// attack. Images that fail to load or embed are reported and skipped; the
/// run fails only if no image succeeds.
pub fn run_benchmark(cfg: &RunConfig) -> Result<RobustnessReport> {
    cfg.validate()?;
    let logo = cfg.logo.load()?;
    let results: Vec<(String, Result<Vec<BenchRow>>)> = cfg
        .corpus
        .par_iter()
        .map(|entry| {
            (
                entry.name(),
                bench_image(entry, &logo, &cfg.embed, &cfg.attacks, cfg.fixture_size),
            )
        })
        .collect();
    let mut per_image = Vec::new();
    let mut failures = Vec::new();
    for (image, res) in results {
        match res {
            Ok(rows) => per_image.push((image, rows)),
            Err(e) => failures.push(ImageFailure {
                image,
                error: e.to_string(),
            }),
        }
    }
    if per_image.is_empty() {
        return Err(Error::EmptyRun(format!(
            "all {} image(s) failed; first error: {}",
            failures.len(),
            failures.first().map(|f| f.error.as_str()).unwrap_or("none")
        )));
    }
    // stable: duplicate names keep corpus order
    per_image.sort_by(|a, b| a.0.cmp(&b.0));
    failures.sort_by(|a, b| a.image.cmp(&b.image));
    let rows: Vec<BenchRow> = per_image.into_iter().flat_map(|(_, r)| r).collect();
    Ok(RobustnessReport {
        config: cfg.to_config_text(),
        means: mean_rows(&rows),
        rows,
        failures,
    })
}

/// Runs the benchmark once embedding in YUV and once directly in RGB, with
/// everything else equal, and pairs the rows.
pub fn compare_color_spaces(cfg: &RunConfig) -> Result<PairedReport> {
    let with_space = |space| {
        let mut c = cfg.clone();
        c.embed.color_space = space;
        run_benchmark(&c)
    };
    let yuv = with_space(ColorSpace::Yuv)?;
    let rgb = with_space(ColorSpace::Rgb)?;
    let side = |r: &BenchRow| SideMetrics {
        psnr: r.psnr,
        ssim: r.ssim,
        ber: r.ber,
    };
    let pair = |a: &[BenchRow], b: &[BenchRow]| -> Vec<PairedRow> {
        a.iter()
            .filter_map(|y| {
                let r = b
                    .iter()
                    .find(|r| r.image == y.image && r.attack == y.attack && r.param == y.param)?;
                Some(PairedRow {
                    image: y.image.clone(),
                    attack: y.attack.clone(),
                    param: y.param.clone(),
                    yuv: side(y),
                    rgb: side(r),
                })
            })
            .collect()
    };
    let mut failures = yuv.failures.clone();
    for f in &rgb.failures {
        if !failures.iter().any(|g| g.image == f.image) {
            failures.push(f.clone());
        }
    }
    failures.sort_by(|a, b| a.image.cmp(&b.image));
    let rows = pair(&yuv.rows, &rgb.rows);
    let mut config = cfg.clone();
    config.embed.color_space = ColorSpace::Yuv;
    Ok(PairedReport {
        config: config.to_config_text(),
        means: pair(&yuv.means, &rgb.means),
        rows,
        failures,
    })
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}

/// Writes whichever of CSV, Markdown and gnuplot outputs `cfg` names.
pub fn write_outputs(cfg: &RunConfig, report: &RobustnessReport) -> Result<()> {
    if let Some(p) = &cfg.csv {
        write_text(p, &report.to_csv()?)?;
    }
    if let Some(p) = &cfg.markdown {
        write_text(p, &report.to_markdown())?;
    }
    if let Some(p) = &cfg.gnuplot {
        let png = p.with_extension("png");
        write_text(p, &report.to_gnuplot(&png.display().to_string()))?;
    }
    Ok(())
}

/// Writes the paired report to the CSV and Markdown paths of `cfg`.
pub fn write_paired_outputs(cfg: &RunConfig, report: &PairedReport) -> Result<()> {
    if let Some(p) = &cfg.csv {
        write_text(p, &report.to_csv()?)?;
    }
    if let Some(p) = &cfg.markdown {
        write_text(p, &report.to_markdown())?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::image_io::FixtureKind;

    fn small_cfg() -> RunConfig {
        let mut cfg = RunConfig::with_corpus(vec![
            CorpusEntry::Fixture(FixtureKind::Rings),
            CorpusEntry::Fixture(FixtureKind::Noise(1)),
        ]);
        cfg.fixture_size = 256;
        cfg.attacks = vec![
            "jpeg:q=90".parse().unwrap(),
            AttackSpec::parse_with_seed("gn:var=0.001", 4).unwrap(),
        ];
        cfg.logo = LogoSource::Checker;
        cfg
    }

    #[test]
    fn rows_are_sorted_and_counted() {
        let report = run_benchmark(&small_cfg()).unwrap();
        assert_eq!(report.rows.len(), 2 * 3);
        assert_eq!(report.means.len(), 3);
        assert_eq!(report.rows[0].image, "fixture:noise-1");
        assert_eq!(report.rows[0].attack, "none");
        assert_eq!(report.rows[3].image, "fixture:rings");
        for r in report.transparency() {
            assert_eq!(r.ber, 0.0);
            assert_eq!(r.nc_normalized, Some(1.0));
        }
    }

    #[test]
    fn csv_is_deterministic() {
        let a = run_benchmark(&small_cfg()).unwrap().to_csv().unwrap();
        let b = run_benchmark(&small_cfg()).unwrap().to_csv().unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn failures_are_skipped_and_empty_run_errors() {
        let mut cfg = small_cfg();
        cfg.corpus
            .push(CorpusEntry::Path("/nonexistent/host.ppm".into()));
        let report = run_benchmark(&cfg).unwrap();
        assert_eq!(report.failures.len(), 1);
        assert_eq!(report.rows.len(), 6);

        cfg.corpus = vec![CorpusEntry::Path("/nonexistent/host.ppm".into())];
        assert!(matches!(run_benchmark(&cfg), Err(Error::EmptyRun(_))));
    }

    #[test]
    fn paired_report_matches_benchmark_shape() {
        let cfg = small_cfg();
        let single = run_benchmark(&cfg).unwrap();
        let paired = compare_color_spaces(&cfg).unwrap();
        assert_eq!(paired.rows.len(), single.rows.len());
        for r in paired.rows.iter().filter(|r| r.attack == "none") {
            assert_eq!(r.yuv.ber, 0.0);
            assert_eq!(r.rgb.ber, 0.0);
        }
    }
}
