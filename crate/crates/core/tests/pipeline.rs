use std::collections::BTreeSet;
use std::path::Path;

use aquasynth::image::{load_depth, load_rgb, save_depth_png, save_rgb_png, DepthMap, RgbImage, DEPTH_EXPORT_SCALE};
use aquasynth::pipeline::{
    discover_sources, generate_dataset, read_manifest, resynthesize, DatasetConfig, Split, MANIFEST_SCHEMA_VERSION,
};
use aquasynth::water::bundled_table;
use aquasynth::WaterType;

fn write_sources(dir: &Path, n: usize) {
    std::fs::create_dir_all(dir).unwrap();
    for i in 0..n {
        let (w, h) = (24 + i, 20);
        let img = RgbImage::from_fn(w, h, |x, y| {
            let t = ((x * 7 + y * 3 + i * 11) % 17) as f64 / 16.0;
            [t, 1.0 - t, (x as f64 / w as f64).powi(2)]
        });
        let depth = DepthMap::from_fn(w, h, |x, y| 0.8 + 0.15 * x as f64 + 0.07 * y as f64 + 0.01 * i as f64);
        save_rgb_png(&img, dir.join(format!("p{i:02}.png"))).unwrap();
        save_depth_png(&depth, dir.join(format!("p{i:02}.depth.png"))).unwrap();
    }
}

fn config(root: &Path, out: &str) -> DatasetConfig {
    DatasetConfig {
        input_dir: root.join("src"),
        output_dir: root.join(out),
        water_types: vec![WaterType::IA, WaterType::II, WaterType::C5, WaterType::C9],
        images_per_type: 6,
        split: (4, 2),
        target_size: (20, 20),
        master_seed: 11,
        augment: true,
        ..DatasetConfig::default()
    }
}

#[test]
fn manifest_records_re_render_bit_identically() {
    let tmp = tempfile::tempdir().unwrap();
    write_sources(&tmp.path().join("src"), 8);
    let cfg = config(tmp.path(), "out");
    let table = bundled_table();
    let outcome = generate_dataset(&cfg, &table, 3).unwrap();
    assert!(outcome.failures.is_empty());
    assert_eq!(outcome.records.len(), 24);

    let manifest = read_manifest(&outcome.manifest_path).unwrap();
    assert_eq!(manifest.schema_version, MANIFEST_SCHEMA_VERSION);
    assert_eq!(manifest.records, outcome.records);

    let sources = discover_sources(&cfg.input_dir).unwrap();
    for record in &manifest.records {
        let pair = sources.iter().find(|s| s.id == record.source_id).unwrap();
        let item = resynthesize(record, pair, &table).unwrap();
        let written = load_rgb(cfg.output_dir.join(&record.paths.image)).unwrap();
        assert_eq!(item.observed.clamped().to_rgb8(), written.to_rgb8(), "{}", record.paths.image);
        let gt = load_rgb(cfg.output_dir.join(&record.paths.ground_truth)).unwrap();
        assert_eq!(item.clean.to_rgb8(), gt.to_rgb8());

        let depth = load_depth(cfg.output_dir.join(&record.paths.depth), DEPTH_EXPORT_SCALE).unwrap();
        let (lo, hi) = depth.min_max();
        assert!(lo >= 0.25 - 5e-4 && hi <= 20.0 + 5e-4, "{lo} {hi}");
    }
}

#[test]
fn splits_partition_sources_for_every_type() {
    let tmp = tempfile::tempdir().unwrap();
    write_sources(&tmp.path().join("src"), 8);
    let cfg = config(tmp.path(), "out");
    let records = aquasynth::pipeline::plan_dataset(
        &cfg,
        &bundled_table(),
        &(0..8).map(|i| format!("p{i:02}")).collect::<Vec<_>>(),
    )
    .unwrap();
    let ids = |t: WaterType, s: Split| -> BTreeSet<String> {
        records.iter().filter(|r| r.water_type == t && r.split == s).map(|r| r.source_id.clone()).collect()
    };
    for t in [WaterType::IA, WaterType::II, WaterType::C5] {
        let (train, test) = (ids(t, Split::Train), ids(t, Split::Test));
        assert_eq!((train.len(), test.len()), (4, 2));
        assert!(train.is_disjoint(&test));
        assert_eq!(train, ids(WaterType::IA, Split::Train));
    }
    assert_eq!(ids(WaterType::C9, Split::Unsplit).len(), 6);
    for r in records.iter().filter(|r| r.split != Split::Train) {
        assert!(r.augmentation.is_none());
    }
}

#[test]
fn worker_count_does_not_change_bytes() {
    let tmp = tempfile::tempdir().unwrap();
    write_sources(&tmp.path().join("src"), 8);
    let table = bundled_table();
    let a = generate_dataset(&config(tmp.path(), "a"), &table, 1).unwrap();
    let b = generate_dataset(&config(tmp.path(), "b"), &table, 6).unwrap();
    assert_eq!(std::fs::read(&a.manifest_path).unwrap(), std::fs::read(&b.manifest_path).unwrap());
    for r in &a.records {
        for p in [&r.paths.image, &r.paths.ground_truth, &r.paths.depth] {
            let x = std::fs::read(tmp.path().join("a").join(p)).unwrap();
            let y = std::fs::read(tmp.path().join("b").join(p)).unwrap();
            assert_eq!(x, y, "{p}");
        }
    }
}

#[test]
fn unreadable_source_is_reported_not_fatal() {
    let tmp = tempfile::tempdir().unwrap();
    let src = tmp.path().join("src");
    write_sources(&src, 8);
    std::fs::write(src.join("p03.depth.png"), b"not a png").unwrap();
    let cfg = DatasetConfig { images_per_type: 8, split: (5, 3), ..config(tmp.path(), "out") };
    let outcome = generate_dataset(&cfg, &bundled_table(), 2).unwrap();
    assert_eq!(outcome.failures.len(), 4);
    assert!(outcome.failures.iter().all(|f| f.source_id == "p03"));
    assert_eq!(outcome.records.len(), 28);
    assert_eq!(read_manifest(&outcome.manifest_path).unwrap().records.len(), 28);
}
