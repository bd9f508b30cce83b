use qss_core::access::enumerate_structures;

#[test]
fn forbidden_minors_match_matroid_relatedness() {
    for n in 1..=5 {
        let mut disagree = Vec::new();
        for g in enumerate_structures(n) {
            let excluded = g.forbidden_minor().unwrap().is_none();
            let related = g.is_matroid_related().unwrap();
            if excluded != related {
                disagree.push((g.to_text(), excluded, related));
            }
        }
        assert!(
            disagree.is_empty(),
            "n={n}: {} disagreements, first {:?}",
            disagree.len(),
            disagree.first()
        );
    }
}

#[test]
fn port_counts_are_nontrivial() {
    let all = enumerate_structures(5);
    assert_eq!(all.len(), 7579);
    let related = all
        .iter()
        .filter(|g| g.is_matroid_related().unwrap())
        .count();
    println!("related on 5 players: {related}");
    assert!(related > 0 && related < all.len());
}
