use std::sync::{Arc, Barrier};
use std::thread;

use gsp_census::{Cache, CensusRecord, Job, Provenance, SCHEMA_VERSION};
use num_bigint::BigUint;

fn record(tag: u64) -> CensusRecord {
    let mut r = CensusRecord::new("census exact")
        .param("g", 2)
        .param("ell", 3)
        .param("gamma", 2);
    r.count("T", &BigUint::from(22_680u32), Provenance::Formula);
    r.timestamp = tag;
    r
}

#[test]
fn store_then_lookup_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let cache = Cache::new(dir.path());
    let r = Job::CensusExact {
        g: 3,
        ell: 5,
        gamma: Some(2),
        all_gamma: false,
    }
    .run()
    .unwrap();
    cache.store(&r).unwrap();
    assert_eq!(cache.lookup(&r.command, &r.params), Some(r.clone()));
    let mut other = r.params.clone();
    other.insert("gamma".into(), "3".into());
    assert_eq!(cache.lookup(&r.command, &other), None);
    assert_eq!(cache.lookup("census sweep", &r.params), None);
}

#[test]
fn schema_bump_is_a_miss() {
    let dir = tempfile::tempdir().unwrap();
    let r = record(1);
    Cache::new(dir.path()).store(&r).unwrap();
    let bumped = Cache::new(dir.path()).with_schema_version(SCHEMA_VERSION + 1);
    assert_eq!(bumped.lookup(&r.command, &r.params), None);
    assert!(Cache::new(dir.path())
        .lookup(&r.command, &r.params)
        .is_some());
}

#[test]
fn missing_directory_is_a_miss() {
    let dir = tempfile::tempdir().unwrap();
    let cache = Cache::new(dir.path().join("absent"));
    let r = record(1);
    assert_eq!(cache.lookup(&r.command, &r.params), None);
    cache.store(&r).unwrap();
    assert!(cache.lookup(&r.command, &r.params).is_some());
}

#[test]
fn concurrent_stores_leave_one_valid_winner() {
    let dir = tempfile::tempdir().unwrap();
    let writers = 8;
    let barrier = Arc::new(Barrier::new(writers));
    let handles: Vec<_> = (0..writers as u64)
        .map(|i| {
            let cache = Cache::new(dir.path());
            let barrier = Arc::clone(&barrier);
            thread::spawn(move || {
                barrier.wait();
                for round in 0..20 {
                    cache.store(&record(i * 100 + round)).unwrap();
                }
            })
        })
        .collect();
    for h in handles {
        h.join().unwrap();
    }
    let files: Vec<_> = std::fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    assert_eq!(files.len(), 1, "temporary files left behind: {files:?}");
    let text = std::fs::read_to_string(&files[0]).unwrap();
    let winner = CensusRecord::from_json(&text).unwrap();
    assert_eq!(winner.exact_counts["T"], "22680");
    assert!(winner.timestamp % 100 < 20 && winner.timestamp / 100 < writers as u64);
}
