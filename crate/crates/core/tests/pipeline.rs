mod common;

use orthkit::obstructions::Pattern;
use orthkit::{
    blocks, bruteforce_layout, recognize, recognize_orth322, recognize_orth_h2t, validate_representation,
    Limits, NotLineGraph, Obstruction, RecognitionReport, SimpleGraph, Verdict,
};
use rand::rngs::StdRng;
use rand::{RngExt, SeedableRng};

use common::{connected_graphs, oracle_layout_ok, random_block_graph};

fn sweep(max_n: usize) -> Vec<SimpleGraph> {
    (2..=max_n).flat_map(connected_graphs).collect()
}

/// Member ⇒ the certificate validates against G; NonMember ⇒ the
/// obstruction re-checks.
fn check_report(g: &SimpleGraph, h: usize, t: usize, r: &RecognitionReport) {
    match r.verdict {
        Verdict::Member => {
            let cert = r.certificate.as_ref().expect("member without certificate");
            assert_eq!(validate_representation(&cert.representation, g, h, t), Ok(()));
            for c in &cert.layouts {
                assert!(oracle_layout_ok(&c.layout, &c.root, h, t));
            }
        }
        Verdict::NonMember => match r.obstruction.as_ref().expect("non-member without obstruction") {
            Obstruction::OversizedBlock { root, block } => {
                let d = blocks(root);
                assert!(block.len() > 3);
                assert!(d.blocks.iter().any(|b| {
                    let mut names: Vec<&str> = b.iter().map(|&v| root.label(v)).collect();
                    names.sort_unstable();
                    let mut want: Vec<&str> = block.iter().map(String::as_str).collect();
                    want.sort_unstable();
                    names == want
                }));
            }
            Obstruction::Subdivision { pattern, root, witness, .. } => {
                assert!(witness.verify(root, &pattern.graph()));
            }
            Obstruction::NotLineGraph {
                reason: NotLineGraph::Claw { center, leaves },
                ..
            } => {
                let c = g.index_of(center).unwrap();
                let l: Vec<usize> = leaves.iter().map(|x| g.index_of(x).unwrap()).collect();
                assert!(l.iter().all(|&x| g.has_edge(c, x)));
                assert!(!g.has_edge(l[0], l[1]) && !g.has_edge(l[0], l[2]) && !g.has_edge(l[1], l[2]));
            }
            Obstruction::NoLayout { root, piece, .. } => {
                let sub = root.induced_by_labels(piece).unwrap();
                if sub.order() <= 7 {
                    assert!(bruteforce_layout(&sub, h, t).unwrap().is_none());
                }
            }
            _ => {}
        },
        Verdict::Inconclusive => assert!(r.note.is_some()),
    }
}

#[test]
fn recursion_matches_exhaustive_search_for_larger_degrees() {
    // For h >= 4 the block criterion no longer applies (C4 is a member at
    // h = 4), so compare against the exhaustive layout search directly.
    let limits = Limits::default();
    for hg in sweep(6) {
        let g = hg.line_graph();
        for h in [3, 4, 5] {
            for t in [1, 2] {
                let r = recognize(&g, h, t, &limits).unwrap();
                check_report(&g, h, t, &r);
                let brute = bruteforce_layout(&hg, h, t).unwrap().is_some();
                assert_eq!(r.verdict == Verdict::Member, brute, "L({hg:?}) at ({h},{t})");
            }
        }
    }
}

#[test]
fn t1_coincides_with_322() {
    let limits = Limits::default();
    for hg in sweep(6) {
        let g = hg.line_graph();
        let base = recognize_orth322(&g).unwrap().verdict;
        for h in 3..7 {
            assert_eq!(recognize(&g, h, 1, &limits).unwrap().verdict, base);
        }
    }
}

#[test]
fn orth323_small_roots_are_decided() {
    let limits = Limits::default();
    for hg in sweep(6) {
        let g = hg.line_graph();
        let r = recognize(&g, 3, 3, &limits).unwrap();
        check_report(&g, 3, 3, &r);
        let brute = bruteforce_layout(&hg, 3, 3).unwrap().is_some();
        let expected = if brute { Verdict::Member } else { Verdict::NonMember };
        assert_eq!(r.verdict, expected, "L({hg:?})");
    }
}

#[test]
fn random_block_graphs_agree() {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for i in 0..100 {
        let n = rng.random_range(4..=40);
        let big = i % 4 == 0;
        let hg = random_block_graph(&mut rng, n, big);
        let g = hg.line_graph();
        let a = recognize_orth_h2t(&g, 3, 2).unwrap();
        let b = recognize_orth322(&g).unwrap();
        assert_eq!(a.verdict, b.verdict, "instance {i}");
        assert_eq!(a.verdict == Verdict::Member, !big, "instance {i}");
        check_report(&g, 3, 2, &a);
        check_report(&g, 3, 2, &b);
        // every member at h = 3 stays one at h = 4, 5
        if !big {
            for h in [4, 5] {
                let r = recognize_orth_h2t(&g, h, 2).unwrap();
                assert_eq!(r.verdict, Verdict::Member, "instance {i} at h = {h}");
                check_report(&g, h, 2, &r);
            }
        }
    }
}

#[test]
fn exhaustive_search_is_monotone() {
    for hg in sweep(5) {
        for h in [3, 4] {
            for t in [1, 2, 3] {
                if bruteforce_layout(&hg, h, t).unwrap().is_some() {
                    assert!(bruteforce_layout(&hg, h + 1, t).unwrap().is_some());
                    assert!(bruteforce_layout(&hg, h, t + 1).unwrap().is_some());
                }
            }
        }
    }
}

#[test]
fn obstructions_from_the_dispatcher() {
    let limits = Limits::default();
    let lk5 = SimpleGraph::complete(5).line_graph();
    let r = recognize(&lk5, 3, 3, &limits).unwrap();
    assert_eq!(r.verdict, Verdict::NonMember);
    assert!(matches!(
        r.obstruction,
        Some(Obstruction::Subdivision { pattern: Pattern::K5Minus2K2, .. })
    ));
    check_report(&lk5, 3, 3, &r);

    let lk33 = SimpleGraph::complete_bipartite(3, 3).line_graph();
    let r = recognize(&lk33, 3, 3, &limits).unwrap();
    assert_eq!(r.verdict, Verdict::NonMember);
    check_report(&lk33, 3, 3, &r);

    let lk25 = SimpleGraph::complete_bipartite(2, 5).line_graph();
    let with = Limits {
        include_k25: true,
        ..Limits::default()
    };
    let r = recognize(&lk25, 3, 3, &with).unwrap();
    assert_eq!(r.verdict, Verdict::NonMember);
    match &r.obstruction {
        Some(Obstruction::Subdivision { note, .. }) => assert!(note.is_some()),
        other => panic!("unexpected obstruction {other:?}"),
    }
}

#[test]
fn size_cap_is_an_error() {
    let g = SimpleGraph::path(20);
    let limits = Limits {
        max_input: 10,
        ..Limits::default()
    };
    assert!(recognize(&g, 3, 2, &limits).is_err());
}
