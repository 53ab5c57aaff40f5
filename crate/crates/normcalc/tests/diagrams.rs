use normcalc::bundled::DIAGRAMS;
use normcalc::diagram::parse_diagram;
use normcalc_core::heegaard::NonnegativeSearch;
use normcalc_core::Exponent;

#[test]
fn gradings_are_additive() {
    for b in DIAGRAMS {
        let d = parse_diagram(b.name, b.json).unwrap().diagram;
        let gens = d.generators();
        let g = d.h_gradings().unwrap().gradings;
        for i in 0..gens.len() {
            for j in 0..gens.len() {
                let phi = d.domain_between(&gens[i], &gens[j]).expect("S^3 diagrams connect every pair");
                let shift = d.grading_shift(&phi);
                // A(x) - A(y) = n_z - n_w, doubled.
                let want: Vec<i64> = shift.iter().map(|s| 2 * s).collect();
                assert_eq!((&g[i] - &g[j]).doubled(), &want[..], "{} ({i},{j})", b.name);
            }
        }
    }
}

#[test]
fn euler_map_is_symmetric_and_dominated() {
    for b in DIAGRAMS {
        let d = parse_diagram(b.name, b.json).unwrap().diagram;
        let r = d.euler_characteristics().unwrap();
        for (s, chi) in &r.euler {
            assert_eq!(r.euler.get(&-s).copied().unwrap_or(0), *chi, "{}", b.name);
            assert!(r.rank(s) >= chi.unsigned_abs());
        }
        let total: u64 = r.ranks.values().sum();
        assert_eq!(total as usize, d.generators().len());
    }
}

#[test]
fn mod_two_maslov_matches_signs() {
    for b in DIAGRAMS {
        let d = parse_diagram(b.name, b.json).unwrap().diagram;
        let gens = d.generators();
        for x in &gens {
            for y in &gens {
                let m = d.maslov_relative(x, y).unwrap();
                let same = x.sign == y.sign;
                assert_eq!(m.rem_euclid(2) == 0, same, "{}", b.name);
            }
        }
    }
}

#[test]
fn finger_bigon_is_one_way() {
    let b = DIAGRAMS.iter().find(|d| d.name == "unknot_finger").unwrap();
    let d = parse_diagram(b.name, b.json).unwrap().diagram;
    let gens = d.generators();
    let mut found = 0;
    for x in &gens {
        for y in &gens {
            if x == y {
                continue;
            }
            if let NonnegativeSearch::Found(c) = d.nonnegative_class_exists(x, y, 6) {
                found += 1;
                assert!(c.is_nonnegative());
                assert!(!matches!(d.nonnegative_class_exists(y, x, 6), NonnegativeSearch::Found(_)));
                assert_eq!(d.maslov_relative(x, y).unwrap(), 1);
            }
        }
    }
    assert!(found >= 1);
    assert_eq!(d.h_gradings().unwrap().gradings, vec![Exponent::zero(1); 3]);
}
