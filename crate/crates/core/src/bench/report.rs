//! Benchmark rows and their CSV, Markdown and gnuplot renderings.
//!
//! Floats are written with Rust's shortest round-trip formatting, so parsing
//! a CSV back gives the exact values the means were computed from.

use std::fmt::Write as _;

use crate::error::{Error, Result};

/// CSV header of [`RobustnessReport::to_csv`].
pub const CSV_COLUMNS: [&str; 9] = [
    "image",
    "attack",
    "param",
    "psnr",
    "ssim",
    "ber",
    "nc_literal",
    "nc_normalized",
    "clamped_pixels",
];

/// Name given to the corpus-mean rows.
pub const MEAN_ROW: &str = "mean";

/// One image under one attack. PSNR and SSIM compare the attacked image
/// with the original host; on the no-attack row they measure transparency.
#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub image: String,
    pub attack: String,
    pub param: String,
    pub psnr: f64,
    pub ssim: f64,
    pub ber: f64,
    pub nc_literal: f64,
    pub nc_normalized: Option<f64>,
    pub clamped_pixels: f64,
}

impl BenchRow {
    fn fields(&self) -> [String; 9] {
        [
            self.image.clone(),
            self.attack.clone(),
            self.param.clone(),
            self.psnr.to_string(),
            self.ssim.to_string(),
            self.ber.to_string(),
            self.nc_literal.to_string(),
            self.nc_normalized
                .map(|v| v.to_string())
                .unwrap_or_default(),
            self.clamped_pixels.to_string(),
        ]
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ImageFailure {
    pub image: String,
    pub error: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RobustnessReport {
    /// Canonical text of the run configuration.
    pub config: String,
    /// Per-image rows, sorted by image then attack (no-attack first).
    pub rows: Vec<BenchRow>,
    /// One row per attack, averaged over images.
    pub means: Vec<BenchRow>,
    pub failures: Vec<ImageFailure>,
}

fn mean(values: impl Iterator<Item = f64>) -> Option<f64> {
    let (mut sum, mut n) = (0.0, 0usize);
    for v in values {
        sum += v;
        n += 1;
    }
    (n > 0).then(|| sum / n as f64)
}

/// Per-attack means of `rows`, in first-seen attack order. Rows without a
/// normalized NC are left out of that column's mean.
pub fn mean_rows(rows: &[BenchRow]) -> Vec<BenchRow> {
    let mut keys: Vec<(&str, &str)> = Vec::new();
    for r in rows {
        if !keys.contains(&(r.attack.as_str(), r.param.as_str())) {
            keys.push((&r.attack, &r.param));
        }
    }
    keys.into_iter()
        .map(|(attack, param)| {
            let group: Vec<&BenchRow> = rows
                .iter()
                .filter(|r| r.attack == attack && r.param == param)
                .collect();
            let m = |f: fn(&BenchRow) -> f64| mean(group.iter().map(|r| f(r))).unwrap_or(f64::NAN);
            BenchRow {
                image: MEAN_ROW.into(),
                attack: attack.into(),
                param: param.into(),
                psnr: m(|r| r.psnr),
                ssim: m(|r| r.ssim),
                ber: m(|r| r.ber),
                nc_literal: m(|r| r.nc_literal),
                nc_normalized: mean(group.iter().filter_map(|r| r.nc_normalized)),
                clamped_pixels: m(|r| r.clamped_pixels),
            }
        })
        .collect()
}

fn csv_bytes(header: &[&str], records: impl Iterator<Item = Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let wrap = |e: csv::Error| Error::Config(format!("csv: {e}"));
    w.write_record(header).map_err(wrap)?;
    for rec in records {
        w.write_record(&rec).map_err(wrap)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::Config(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn attack_label(attack: &str, param: &str) -> String {
    if param.is_empty() {
        attack.to_string()
    } else {
        format!("{attack}:{param}")
    }
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(|v| format!("{v:.4}")).unwrap_or_else(|| "n/a".into())
}

impl RobustnessReport {
    /// Per-image rows followed by the mean rows.
    pub fn to_csv(&self) -> Result<String> {
        csv_bytes(
            &CSV_COLUMNS,
            self.rows
                .iter()
                .chain(&self.means)
                .map(|r| r.fields().to_vec()),
        )
    }

    /// Rows of the no-attack setting.
    pub fn transparency(&self) -> impl Iterator<Item = &BenchRow> {
        self.rows.iter().filter(|r| r.attack == "none")
    }

    /// The mean row for `attack`/`param`, if that attack was run.
    pub fn mean_for(&self, attack: &str, param: &str) -> Option<&BenchRow> {
        self.means
            .iter()
            .find(|r| r.attack == attack && r.param == param)
    }

    pub fn to_markdown(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# Watermark benchmark\n");
        let _ = writeln!(s, "```text\n{}```\n", self.config);
        let _ = writeln!(s, "## Transparency\n");
        let _ = writeln!(s, "| image | PSNR (dB) | SSIM | clamped pixels |");
        let _ = writeln!(s, "|---|---:|---:|---:|");
        for r in self
            .transparency()
            .chain(self.means.iter().filter(|r| r.attack == "none"))
        {
            let _ = writeln!(
                s,
                "| {} | {:.2} | {:.4} | {} |",
                r.image, r.psnr, r.ssim, r.clamped_pixels
            );
        }
        let _ = writeln!(s, "\n## Robustness (corpus mean)\n");
        let _ = writeln!(
            s,
            "| attack | BER | NC literal | NC normalized | PSNR (dB) |"
        );
        let _ = writeln!(s, "|---|---:|---:|---:|---:|");
        for r in &self.means {
            let _ = writeln!(
                s,
                "| {} | {:.4} | {:.4} | {} | {:.2} |",
                attack_label(&r.attack, &r.param),
                r.ber,
                r.nc_literal,
                fmt_opt(r.nc_normalized),
                r.psnr
            );
        }
        let _ = writeln!(s, "\n## Per image\n");
        let _ = writeln!(
            s,
            "| image | attack | PSNR (dB) | SSIM | BER | NC literal | NC normalized |"
        );
        let _ = writeln!(s, "|---|---|---:|---:|---:|---:|---:|");
        for r in &self.rows {
            let _ = writeln!(
                s,
                "| {} | {} | {:.2} | {:.4} | {:.4} | {:.4} | {} |",
                r.image,
                attack_label(&r.attack, &r.param),
                r.psnr,
                r.ssim,
                r.ber,
                r.nc_literal,
                fmt_opt(r.nc_normalized)
            );
        }
        if !self.failures.is_empty() {
            let _ = writeln!(s, "\n## Skipped images\n");
            for f in &self.failures {
                let _ = writeln!(s, "- `{}`: {}", f.image, f.error);
            }
        }
        s
    }

    /// A gnuplot script drawing mean BER per attack into `png`.
    pub fn to_gnuplot(&self, png: &str) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "set terminal pngcairo size 900,480");
        let _ = writeln!(s, "set output '{png}'");
        let _ = writeln!(s, "set title 'Mean bit error rate per attack'");
        let _ = writeln!(s, "set style data histograms");
        let _ = writeln!(s, "set style fill solid 0.8 border -1");
        let _ = writeln!(s, "set ylabel 'BER'");
        let _ = writeln!(s, "set yrange [0:*]");
        let _ = writeln!(s, "set xtics rotate by -30");
        let _ = writeln!(s, "$ber << EOD");
        for r in &self.means {
            let _ = writeln!(s, "\"{}\" {}", attack_label(&r.attack, &r.param), r.ber);
        }
        let _ = writeln!(s, "EOD");
        let _ = writeln!(s, "plot $ber using 2:xtic(1) notitle");
        s
    }
}

/// Metrics of one pipeline in a color-space comparison row.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SideMetrics {
    pub psnr: f64,
    pub ssim: f64,
    pub ber: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PairedRow {
    pub image: String,
    pub attack: String,
    pub param: String,
    pub yuv: SideMetrics,
    pub rgb: SideMetrics,
}

pub const PAIRED_CSV_COLUMNS: [&str; 9] = [
    "image", "attack", "param", "psnr_yuv", "psnr_rgb", "ssim_yuv", "ssim_rgb", "ber_yuv",
    "ber_rgb",
];

/// YUV and RGB runs of the same config, row by row.
#[derive(Clone, Debug, PartialEq)]
pub struct PairedReport {
    pub config: String,
    pub rows: Vec<PairedRow>,
    pub means: Vec<PairedRow>,
    pub failures: Vec<ImageFailure>,
}

impl PairedReport {
    /// No-attack rows where both pipelines decode perfectly, and how many of
    /// those have the higher PSNR in YUV: `(yuv_wins, matched)`.
    pub fn yuv_wins(&self) -> (usize, usize) {
        let matched: Vec<&PairedRow> = self
            .rows
            .iter()
            .filter(|r| r.attack == "none" && r.yuv.ber == 0.0 && r.rgb.ber == 0.0)
            .collect();
        let wins = matched.iter().filter(|r| r.yuv.psnr > r.rgb.psnr).count();
        (wins, matched.len())
    }

    pub fn to_csv(&self) -> Result<String> {
        csv_bytes(
            &PAIRED_CSV_COLUMNS,
            self.rows.iter().chain(&self.means).map(|r| {
                vec![
                    r.image.clone(),
                    r.attack.clone(),
                    r.param.clone(),
                    r.yuv.psnr.to_string(),
                    r.rgb.psnr.to_string(),
                    r.yuv.ssim.to_string(),
                    r.rgb.ssim.to_string(),
                    r.yuv.ber.to_string(),
                    r.rgb.ber.to_string(),
                ]
            }),
        )
    }

    pub fn to_markdown(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# YUV vs RGB embedding\n");
        let _ = writeln!(s, "```text\n{}```\n", self.config);
        let (wins, matched) = self.yuv_wins();
        let _ = writeln!(
            s,
            "YUV has the higher PSNR on {wins} of {matched} images decoded without error in both spaces.\n"
        );
        let _ = writeln!(
            s,
            "| image | attack | PSNR YUV | PSNR RGB | SSIM YUV | SSIM RGB | BER YUV | BER RGB |"
        );
        let _ = writeln!(s, "|---|---|---:|---:|---:|---:|---:|---:|");
        for r in self.rows.iter().chain(&self.means) {
            let _ = writeln!(
                s,
                "| {} | {} | {:.2} | {:.2} | {:.4} | {:.4} | {:.4} | {:.4} |",
                r.image,
                attack_label(&r.attack, &r.param),
                r.yuv.psnr,
                r.rgb.psnr,
                r.yuv.ssim,
                r.rgb.ssim,
                r.yuv.ber,
                r.rgb.ber
            );
        }
        if !self.failures.is_empty() {
            let _ = writeln!(s, "\n## Skipped images\n");
            for f in &self.failures {
                let _ = writeln!(s, "- `{}`: {}", f.image, f.error);
            }
        }
        s
    }
}
