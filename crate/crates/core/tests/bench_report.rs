use yuvmark::bench::{
    run_benchmark, CorpusEntry, LogoSource, RunConfig, CSV_COLUMNS, DEFAULT_ATTACKS, MEAN_ROW,
};
use yuvmark::image_io::FixtureKind;

fn corpus_of_24() -> RunConfig {
    let corpus = (0..12)
        .flat_map(|s| [FixtureKind::Noise(s), FixtureKind::Composite(s)])
        .map(CorpusEntry::Fixture)
        .collect();
    let mut cfg = RunConfig::with_corpus(corpus);
    cfg.fixture_size = 64;
    cfg.logo = LogoSource::Random(1);
    cfg
}

#[test]
fn row_count_is_images_times_attacks_plus_one() {
    let cfg = corpus_of_24();
    assert_eq!(cfg.attacks.len(), DEFAULT_ATTACKS.len());
    let report = run_benchmark(&cfg).unwrap();
    assert_eq!(report.rows.len(), 24 * (9 + 1));
    assert_eq!(report.means.len(), 9 + 1);
    assert!(report
        .transparency()
        .all(|r| r.ber == 0.0 && r.nc_normalized == Some(1.0)));
}

#[test]
fn means_recompute_exactly_from_csv() {
    let csv = run_benchmark(&corpus_of_24()).unwrap().to_csv().unwrap();
    let mut reader = csv::Reader::from_reader(csv.as_bytes());
    assert_eq!(
        reader.headers().unwrap().iter().collect::<Vec<_>>(),
        CSV_COLUMNS
    );
    let records: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    let (rows, means): (Vec<_>, Vec<_>) = records.iter().partition(|r| &r[0] != MEAN_ROW);
    assert_eq!(means.len(), 10);
    for m in means {
        let group: Vec<_> = rows
            .iter()
            .filter(|r| r[1] == m[1] && r[2] == m[2])
            .collect();
        for col in [3, 4, 5, 6, 7, 8] {
            let vals: Vec<f64> = group
                .iter()
                .filter(|r| !r[col].is_empty())
                .map(|r| r[col].parse().unwrap())
                .collect();
            if vals.is_empty() {
                assert!(m[col].is_empty());
                continue;
            }
            let mean = vals.iter().sum::<f64>() / vals.len() as f64;
            let stated: f64 = m[col].parse().unwrap();
            assert!(
                mean == stated || (mean.is_nan() && stated.is_nan()),
                "{}:{} col {col}: {mean} vs {stated}",
                &m[1],
                &m[2]
            );
        }
    }
}
