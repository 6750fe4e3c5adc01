//! Sweeps strength settings over the fixture corpus and prints transparency,
//! zero-attack repair statistics and post-attack BER for each setting.
//!
//! Usage: cargo run --release -p yuvmark --example tune_beta -- \
//!     [beta_y,beta_u,beta_v,magnitude_floor ...]
//!
//! Without arguments a built-in grid is swept. The shipped defaults in
//! `EmbedConfig::default()` were picked from this output.

use rayon::prelude::*;
use yuvmark::image_io::{default_corpus, synth_fixture};
use yuvmark::metrics::{ber, psnr, ssim};
use yuvmark::{
    apply_attack, embed_f64, extract_f64, AttackSpec, ColorSpace, EmbedConfig, WatermarkLogo,
};

const ATTACKS: [&str; 6] = [
    "jpeg:q=100",
    "jpeg:q=90",
    "gn:var=0.001,seed=7",
    "sp:d=0.001,seed=7",
    "mf:w=3",
    "gf:w=3,sigma=0.5",
];

struct Row {
    psnr: f64,
    ssim: f64,
    rgb_psnr: f64,
    passes: usize,
    residual: usize,
    bers: Vec<f64>,
}

fn evaluate(cfg: &EmbedConfig) -> Vec<Row> {
    let logos = [
        WatermarkLogo::ones(),
        WatermarkLogo::checkerboard(),
        WatermarkLogo::random(2024),
    ];
    let attacks: Vec<AttackSpec> = ATTACKS.iter().map(|s| s.parse().unwrap()).collect();
    let jobs: Vec<_> = default_corpus()
        .into_iter()
        .flat_map(|k| logos.iter().map(move |l| (k, *l)))
        .collect();
    jobs.par_iter()
        .map(|(kind, logo)| {
            let host = synth_fixture(*kind, 512, 512).unwrap();
            let marked = embed_f64(&host, logo, cfg).unwrap();
            let rgb_cfg = EmbedConfig {
                color_space: ColorSpace::Rgb,
                ..cfg.clone()
            };
            let rgb = embed_f64(&host, logo, &rgb_cfg).unwrap();
            let bers = attacks
                .iter()
                .map(|a| {
                    let attacked = apply_attack(&marked.image, a).unwrap();
                    ber(logo, &extract_f64(&attacked, cfg).unwrap())
                })
                .collect();
            Row {
                psnr: psnr(&host, &marked.image).unwrap(),
                ssim: ssim(&host, &marked.image).unwrap(),
                rgb_psnr: psnr(&host, &rgb.image).unwrap(),
                passes: marked.report.repair_passes,
                residual: marked.report.residual_bit_errors + rgb.report.residual_bit_errors,
                bers,
            }
        })
        .collect()
}

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let grid: Vec<[f64; 4]> = if args.is_empty() {
        let mut g = Vec::new();
        for &by in &[0.14, 0.16, 0.18] {
            for &bu in &[0.6, 0.7, 0.8] {
                for &floor in &[150.0, 200.0, 250.0] {
                    g.push([by, bu, bu, floor]);
                }
            }
        }
        g
    } else {
        args.iter()
            .map(|a| {
                let v: Vec<f64> = a.split(',').map(|x| x.parse().unwrap()).collect();
                [v[0], v[1], v[2], v[3]]
            })
            .collect()
    };
    println!(
        "beta_y beta_u beta_v mfloor | psnr  ssim   | rgb>=yuv  | passes resid | {}",
        ATTACKS.join(" ")
    );
    for [by, bu, bv, floor] in grid {
        let cfg = EmbedConfig {
            beta_y: by,
            beta_u: bu,
            beta_v: bv,
            magnitude_floor: floor,
            ..EmbedConfig::default()
        };
        let rows = evaluate(&cfg);
        let n = rows.len() as f64;
        let mean = |f: &dyn Fn(&Row) -> f64| rows.iter().map(f).sum::<f64>() / n;
        let rgb_wins = rows.iter().filter(|r| r.rgb_psnr >= r.psnr).count();
        let max_passes = rows.iter().map(|r| r.passes).max().unwrap();
        let residual: usize = rows.iter().map(|r| r.residual).sum();
        let bers: Vec<String> = (0..ATTACKS.len())
            .map(|i| format!("{:.4}", mean(&|r| r.bers[i])))
            .collect();
        println!(
            "{by:.3} {bu:.3} {bv:.3} {floor:.2} | {:.2} {:.4} | {rgb_wins:>2}/{} | {max_passes} {residual} | {}",
            mean(&|r| r.psnr),
            mean(&|r| r.ssim),
            rows.len(),
            bers.join(" ")
        );
    }
}
