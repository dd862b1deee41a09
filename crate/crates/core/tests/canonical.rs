//! Class codes ignore how a system happens to be drawn and labelled.

use std::collections::HashMap;
use std::sync::OnceLock;

use arcforge_core::classify::{system_code, Classification};
use arcforge_core::layout::{crossing_layout, ArcEnd, CrossingLayout};
use arcforge_core::ribbon::{orbit_codes, CanonicalCode, RibbonGraph};
use arcforge_core::triangulation::{standard_fixture, IdealTriangulation};
use arcforge_core::verify::{Survey, DEFAULT_BOUND};
use proptest::prelude::*;

fn torus() -> &'static IdealTriangulation {
    static T: OnceLock<IdealTriangulation> = OnceLock::new();
    T.get_or_init(|| standard_fixture("torus-2-marked").unwrap())
}

fn classes() -> &'static Classification {
    static C: OnceLock<Classification> = OnceLock::new();
    C.get_or_init(|| Survey::new(torus(), DEFAULT_BOUND).classes.unwrap())
}

fn drawing(class: usize) -> CrossingLayout {
    crossing_layout(torus(), classes().classes[class].representative.members()).unwrap()
}

fn code(l: &CrossingLayout) -> CanonicalCode {
    RibbonGraph::from_layout(l, 2).code()
}

/// Renumbers arc `i` as `perm[i]`.
fn permute(l: &CrossingLayout, perm: &[usize]) -> CrossingLayout {
    let mut out = l.clone();
    for c in &mut out.crossings {
        let (a, b) = (perm[c.arcs.0], perm[c.arcs.1]);
        if a > b {
            // listing the rotation from the other arc flips its sense
            c.positive = !c.positive;
        }
        c.arcs = (a.min(b), a.max(b));
    }
    for (i, seq) in l.sequences.iter().enumerate() {
        out.sequences[perm[i]] = seq.clone();
    }
    for end in out.rotations.iter_mut().flatten() {
        end.arc = perm[end.arc];
    }
    out
}

fn reverse(l: &CrossingLayout, arc: usize) -> CrossingLayout {
    let mut out = l.clone();
    out.sequences[arc].reverse();
    for c in &mut out.crossings {
        if c.arcs.0 == arc || c.arcs.1 == arc {
            c.positive = !c.positive;
        }
    }
    for end in out.rotations.iter_mut().flatten() {
        if end.arc == arc {
            *end = ArcEnd { arc, at_start: !end.at_start };
        }
    }
    out
}

fn mirror(l: &CrossingLayout) -> CrossingLayout {
    let mut out = l.clone();
    for rot in &mut out.rotations {
        rot.reverse();
    }
    for c in &mut out.crossings {
        c.positive = !c.positive;
    }
    out
}

fn swap_points(l: &CrossingLayout) -> CrossingLayout {
    let mut out = l.clone();
    out.rotations.swap(0, 1);
    out
}

#[test]
fn identity_relabelings_are_no_ops() {
    let l = drawing(0);
    let n = l.arc_count();
    assert_eq!(permute(&l, &(0..n).collect::<Vec<_>>()), l);
    assert_eq!(reverse(&reverse(&l, 0), 0), l);
    assert_eq!(mirror(&mirror(&l)), l);
}

#[test]
fn mirror_and_swap_keep_every_class_code() {
    for (i, class) in classes().classes.iter().enumerate() {
        let l = drawing(i);
        let base = code(&l);
        assert_eq!(code(&mirror(&l)), base, "class {i}");
        assert_eq!(code(&swap_points(&l)), base, "class {i}");
        assert_eq!(code(&swap_points(&mirror(&l))), base, "class {i}");
        let orbit = orbit_codes(&mirror(&l), 2).unwrap();
        assert_eq!(orbit.code, class.code, "class {i}");
    }
}

#[test]
fn codes_separate_classes() {
    let c = classes();
    let mut seen: HashMap<&CanonicalCode, usize> = HashMap::new();
    for (i, class) in c.classes.iter().enumerate() {
        assert!(seen.insert(&class.code, i).is_none(), "classes {} and {i} share a code", seen[&class.code]);
    }
    // classes with different invariants never collide, and every input
    // system lands in the class of its own code
    let sys = &Survey::new(torus(), DEFAULT_BOUND).systems;
    for s in sys {
        let o = system_code(torus(), s).unwrap();
        let class = &c.classes[seen[&o.code]];
        assert_eq!(class.j(), s.non_intersecting_indices().len());
        assert_eq!(class.crossings(), s.total_crossings());
        assert_eq!(class.size(), s.len());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn relabelled_drawings_keep_the_code(
        class in 0usize..23,
        order in Just((0..12).collect::<Vec<usize>>()).prop_shuffle(),
        flips in proptest::collection::vec(any::<bool>(), 12),
        mirrored in any::<bool>(),
        swapped in any::<bool>(),
    ) {
        let class = class % classes().len();
        let mut l = drawing(class);
        let base = code(&l);
        let n = l.arc_count();
        let perm: Vec<usize> = order.into_iter().filter(|&i| i < n).collect();
        l = permute(&l, &perm);
        for (arc, &f) in flips.iter().enumerate().take(n) {
            if f {
                l = reverse(&l, arc);
            }
        }
        if mirrored {
            l = mirror(&l);
        }
        if swapped {
            l = swap_points(&l);
        }
        prop_assert_eq!(code(&l), base);
        prop_assert!(RibbonGraph::from_layout(&l, 2).verify_filling(0));
    }
}
