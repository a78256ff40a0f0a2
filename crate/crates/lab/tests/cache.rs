use std::fs;

use rickart_core::enumerate::enumerate_subgroups;
use rickart_core::FiniteAbelianGroup;
use rickart_lab::cache::{key, LatticeCache};

fn g(s: &str) -> FiniteAbelianGroup {
    FiniteAbelianGroup::parse(s).unwrap()
}

#[test]
fn keys() {
    assert_eq!(key(&g("Z2+Z16")), "2-16");
    assert_eq!(key(&g("Z6")), "6");
    assert_eq!(key(&FiniteAbelianGroup::zero()), "0");
}

#[test]
fn store_then_load_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let cache = LatticeCache::new(dir.path());
    for spec in ["Z2+Z4", "Z2^3", "Z12", "Z3+Z9"] {
        let m = g(spec);
        let subs = enumerate_subgroups(&m).unwrap();
        assert!(cache.load(&m).is_none());
        cache.store(&m, &subs).unwrap();
        assert_eq!(cache.load(&m).unwrap(), subs.as_ref().clone(), "{spec}");
    }
    let entries = cache.entries().unwrap();
    assert_eq!(entries.len(), 4);
    // no temporary files left behind
    let names: Vec<String> = fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .collect();
    assert!(names.iter().all(|n| n.ends_with(".json")), "{names:?}");
    assert_eq!(cache.clear().unwrap(), 4);
    assert!(cache.entries().unwrap().is_empty());
}

#[test]
fn stale_or_corrupt_files_are_ignored() {
    let dir = tempfile::tempdir().unwrap();
    let cache = LatticeCache::new(dir.path());
    let m = g("Z2+Z4");
    let subs = enumerate_subgroups(&m).unwrap();
    cache.store(&m, &subs).unwrap();
    let path = dir.path().join("2-4.json");
    let text = fs::read_to_string(&path).unwrap();
    fs::write(&path, text.replace("rickart-lattice-v1", "rickart-lattice-v0")).unwrap();
    assert!(cache.load(&m).is_none());
    fs::write(&path, "{ not json").unwrap();
    assert!(cache.load(&m).is_none());
    // warming recomputes and rewrites a readable file
    cache.warm(&m).unwrap();
    assert_eq!(cache.load(&m).unwrap(), subs.as_ref().clone());
}

#[test]
fn missing_directory_is_empty() {
    let dir = tempfile::tempdir().unwrap();
    let cache = LatticeCache::new(dir.path().join("absent"));
    assert!(cache.entries().unwrap().is_empty());
    assert_eq!(cache.clear().unwrap(), 0);
}
