//! Per-map BER after one attack, for every fixture, using a random logo.
//! Shows which embedding sites carry the vote under a given attack.
//!
//! Usage: cargo run --release -p yuvmark --example map_ber -- \
//!     beta_y,beta_u,beta_v,magnitude_floor jpeg:q=90

use yuvmark::image_io::{default_corpus, synth_fixture};
use yuvmark::metrics::ber;
use yuvmark::{
    apply_attack, embed_f64, extract_maps_f64, vote, AttackSpec, EmbedConfig, WatermarkLogo,
};

fn main() {
    let mut args = std::env::args().skip(1);
    let usage = "usage: map_ber beta_y,beta_u,beta_v,magnitude_floor ATTACK";
    let params: Vec<f64> = args
        .next()
        .expect(usage)
        .split(',')
        .map(|x| x.parse().expect("numeric parameter"))
        .collect();
    let attack: AttackSpec = args.next().expect(usage).parse().expect("attack spec");
    let cfg = EmbedConfig {
        beta_y: params[0],
        beta_u: params[1],
        beta_v: params[2],
        magnitude_floor: params[3],
        ..EmbedConfig::default()
    };
    let logo = WatermarkLogo::random(2024);
    for kind in default_corpus() {
        let host = synth_fixture(kind, 512, 512).unwrap();
        let marked = embed_f64(&host, &logo, &cfg).unwrap();
        let attacked = apply_attack(&marked.image, &attack).unwrap();
        let maps = extract_maps_f64(&attacked, &cfg).unwrap();
        let sites: Vec<String> = maps
            .iter()
            .map(|(s, w)| format!("{s}={:.3}", ber(&logo, w)))
            .collect();
        println!(
            "{kind}: {} voted={:.3}",
            sites.join(" "),
            ber(&logo, &vote(&maps))
        );
    }
}
