use godeaux_core::cache::{Cache, CACHE_ENV};
use godeaux_core::poly::{Ideal, MonomialOrder, Ring};

// The only test in this binary, so setting the variable is not racy.
#[test]
fn disk_cache_round_trip_and_tampered_entries() {
    let dir = tempfile::tempdir().unwrap();
    std::env::set_var(CACHE_ENV, dir.path());
    let ring = Ring::fermat();
    let gens = ["x1^2 + x2*x3", "x2^3 - x4^3", "x1*x4 - x3^2"];

    let fresh = Ideal::from_strs(&ring, &gens).unwrap().gb().unwrap();
    let cache = Cache::from_env().unwrap();
    let report = cache.gc().unwrap();
    assert_eq!((report.kept, report.removed), (1, 0));

    // a new ideal object reads the stored basis
    let again = Ideal::from_strs(&ring, &gens).unwrap().gb().unwrap();
    assert_eq!(again, fresh);

    // a well-keyed entry with a wrong basis is not trusted
    let ideal = Ideal::from_strs(&ring, &gens).unwrap();
    let gen_strs: Vec<String> = ideal.gens().iter().map(|g| g.to_string()).collect();
    let order = MonomialOrder::GRevLex.descriptor();
    let mut entry = cache.get(&ring.descriptor(), &order, &gen_strs).unwrap();
    entry.basis = vec!["x1".into()];
    cache.put(&entry).unwrap();
    assert_eq!(ideal.gb().unwrap(), fresh);

    std::fs::write(dir.path().join("junk.json"), "[]").unwrap();
    let report = cache.gc().unwrap();
    assert_eq!((report.kept, report.removed), (1, 1));
    std::env::remove_var(CACHE_ENV);
}
