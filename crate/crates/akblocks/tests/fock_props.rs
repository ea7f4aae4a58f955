//! Properties of the Fock space action and canonical bases: divided powers,
//! known level-one bases, unitriangularity, path independence, and the
//! reduction of level-`ℓ` bases to level one.

mod common;

use akblocks::betaset::*;
use akblocks::blocks::*;
use akblocks::fock::*;
use akblocks::multipartition::content;
use akblocks::multipartition::ChargedMultipartition;
use akblocks::scopes::yz_split;
use akblocks::uglov::{ar_correspondence, upsilon};
use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const BUDGET: usize = DEFAULT_BASIS_BUDGET;

fn single(parts: &[usize]) -> Vec<Partition> {
    vec![Partition::from_parts(parts)]
}

fn charged(parts: &[usize], s: i64, e: usize) -> ChargedMultipartition {
    ChargedMultipartition::new(single(parts), vec![s], e).unwrap()
}

fn v(k: i64) -> LaurentPoly {
    LaurentPoly::monomial(k, 1)
}

#[test]
fn divided_powers_match_quotients_of_powers() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..200 {
        let e = rng.gen_range(2..=4);
        let l = rng.gen_range(1..=3);
        let lm = random_charged(&mut rng, e, l, 4, 3);
        let j = rng.gen_range(0..e);
        let mut power = FockVector::basis(&lm);
        for k in 1..=3 {
            power = f_op(j, &power).unwrap();
            let divided = f_divided(j, k, &FockVector::basis(&lm)).unwrap();
            let fact = LaurentPoly::quantum_factorial(k);
            assert_eq!(power.len(), divided.len());
            for (mp, c) in power.terms() {
                assert_eq!(
                    c.div_exact(&fact),
                    Some(divided.coefficient(mp)),
                    "{lm} j={j} k={k}"
                );
            }
        }
    }
}

#[test]
fn known_level_one_basis_at_e2_n4() {
    let g4 = canonical_basis(&charged(&[4], 0, 2), BUDGET).unwrap();
    let mut expect = FockVector::zero(2, vec![0]);
    expect.add_term(single(&[4]), &v(0));
    expect.add_term(single(&[3, 1]), &v(1));
    expect.add_term(single(&[2, 1, 1]), &v(1));
    expect.add_term(single(&[1, 1, 1, 1]), &v(2));
    assert_eq!(g4, expect);

    let g31 = canonical_basis(&charged(&[3, 1], 0, 2), BUDGET).unwrap();
    let mut expect = FockVector::zero(2, vec![0]);
    expect.add_term(single(&[3, 1]), &v(0));
    expect.add_term(single(&[2, 2]), &v(1));
    expect.add_term(single(&[2, 1, 1]), &v(2));
    assert_eq!(g31, expect);
}

/// The partitions of a weight-one block with the given `e`-core, in
/// decreasing dominance order, by sliding one bead down a runner.
fn weight_one_block(core: &Partition, e: usize) -> Vec<Partition> {
    let b = beta_set(core, 0);
    let mut out: Vec<Partition> = (b.threshold() - e as i64..=b.max_element())
        .filter(|&x| b.contains(x) && !b.contains(x + e as i64))
        .map(|x| beta_inverse(&b.remove(x).insert(x + e as i64)).0)
        .collect();
    out.sort_by_key(|p| std::cmp::Reverse(dominance_key(std::slice::from_ref(p))));
    out
}

#[test]
fn weight_one_blocks_have_chain_bases() {
    for e in 2..=4 {
        for n in 0..=8 {
            for core in Partition::all_of_size(n) {
                let (c, w) = e_core_and_weight(&beta_set(&core, 0), e).unwrap();
                if w != 0 {
                    continue;
                }
                let block = weight_one_block(&beta_inverse(&c).0, e);
                assert_eq!(block.len(), e);
                for i in 0..e - 1 {
                    assert!(block[i].is_e_regular(e));
                    let g = canonical_basis(
                        &ChargedMultipartition::new(vec![block[i].clone()], vec![0], e).unwrap(),
                        BUDGET,
                    )
                    .unwrap();
                    let mut expect = FockVector::zero(e, vec![0]);
                    expect.add_term(vec![block[i].clone()], &v(0));
                    expect.add_term(vec![block[i + 1].clone()], &v(1));
                    assert_eq!(g, expect, "e = {e}, core {core}");
                }
                assert!(!block[e - 1].is_e_regular(e));
            }
        }
    }
}

#[test]
fn level_one_matrices_are_unitriangular_on_blocks() {
    for (e, n_max) in [(2, 8), (3, 7)] {
        for n in 0..=n_max {
            let m = level_one_matrix(e, 0, n, BUDGET).unwrap();
            let regular = Partition::all_of_size(n)
                .into_iter()
                .filter(|p| p.is_e_regular(e))
                .count();
            assert_eq!(m.columns.len(), regular);
            for (c, mu) in m.columns.iter().enumerate() {
                let core_mu = e_core_and_weight(&beta_set(&mu[0], 0), e).unwrap().0;
                for (r, lambda) in m.rows.iter().enumerate() {
                    let d = &m.entries[r][c];
                    if lambda == mu {
                        assert_eq!(*d, LaurentPoly::one());
                    } else if !d.is_zero() {
                        assert!(d.in_v_z_v() && d.is_nonnegative(), "d = {d}");
                        assert!(dominates(mu, lambda), "{lambda:?} not below {mu:?}");
                        assert_eq!(
                            e_core_and_weight(&beta_set(&lambda[0], 0), e).unwrap().0,
                            core_mu
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn level_one_bases_do_not_depend_on_the_path() {
    for (e, n_max) in [(2, 7), (3, 6)] {
        let small = CanonicalBasis::with_path(e, vec![0], BUDGET, PathChoice::Smallest).unwrap();
        let large = CanonicalBasis::with_path(e, vec![0], BUDGET, PathChoice::Largest).unwrap();
        for n in 0..=n_max {
            for p in Partition::all_of_size(n)
                .into_iter()
                .filter(|p| p.is_e_regular(e))
            {
                assert_eq!(
                    *small.get(std::slice::from_ref(&p)).unwrap(),
                    *large.get(&[p]).unwrap()
                );
            }
        }
    }
}

#[test]
fn level_l_bases_are_path_independent_and_unitriangular() {
    for b in sweep(2, 2, 5).into_iter().chain(sweep(3, 2, 4)) {
        let charge = b.base_charge().to_vec();
        let small =
            CanonicalBasis::with_path(b.e(), charge.clone(), BUDGET, PathChoice::Smallest).unwrap();
        let large = CanonicalBasis::with_path(b.e(), charge, BUDGET, PathChoice::Largest).unwrap();
        for lm in enumerate_in_block(&b, DEFAULT_ENUMERATION_BUDGET).unwrap() {
            if !lm.is_kleshchev() {
                continue;
            }
            let g = small.get(lm.components()).unwrap();
            assert_eq!(*g, *large.get(lm.components()).unwrap(), "{lm}");
            assert_eq!(g.coefficient(lm.components()), LaurentPoly::one());
            let top = dominance_key(lm.components());
            for (mp, d) in g.terms() {
                if mp.as_slice() != lm.components() {
                    assert!(d.in_v_z_v() && d.is_nonnegative(), "{lm}: {d}");
                    assert!(dominance_key(mp) < top);
                }
            }
        }
    }
}

/// A random charged multipartition whose β-sets all lie between `Z_{<m}` and
/// `Z_{<m+e}`, returned with `m`.
fn random_window<R: Rng>(rng: &mut R, e: usize, l: usize) -> (ChargedMultipartition, i64) {
    let m = rng.gen_range(-3..=3);
    let (comps, charge): (Vec<_>, Vec<_>) = (0..l)
        .map(|_| {
            let chosen = (m..m + e as i64).filter(|_| rng.gen_bool(0.5));
            beta_inverse(&BetaSet::from_parts(m, chosen))
        })
        .unzip();
    (ChargedMultipartition::new(comps, charge, e).unwrap(), m)
}

#[test]
fn window_multipartitions_have_constrained_nodes() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..400 {
        let e = rng.gen_range(2..=4);
        let l = rng.gen_range(1..=3);
        let (lm, m) = random_window(&mut rng, e, l);
        let forbidden = m.rem_euclid(e as i64) as usize;
        assert!(
            lm.nodes().iter().all(|n| lm.residue(n) != forbidden),
            "{lm}"
        );
        for j in (0..e).filter(|&j| j != forbidden) {
            let jm = (j as i64 - m).rem_euclid(e as i64);
            let (add, rem) = lm.addable_removable(j);
            for n in add.iter().chain(&rem) {
                assert_eq!(content(n, lm.charge()), m + jm);
            }
        }
    }
}

#[test]
fn f_action_intertwines_with_level_one() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..400 {
        let e = rng.gen_range(2..=4);
        let l = rng.gen_range(1..=3);
        let (lm, m) = random_window(&mut rng, e, l);
        let u: Vec<i64> = lm.charge().iter().map(|t| t - m).collect();
        let x = FockVector::basis(&lm);
        for j in 0..e {
            if j as i64 == m.rem_euclid(e as i64) {
                continue;
            }
            let jm = (j as i64 - m).rem_euclid(e as i64) as usize;
            let lhs = psi(&f_op(j, &x).unwrap(), &u).unwrap();
            let rhs = f_op(jm, &psi(&x, &u).unwrap()).unwrap();
            assert_eq!(lhs, rhs, "{lm}, j = {j}, m = {m}");

            let shifted = lm.with_charge(u.clone()).unwrap();
            for pair in ar_correspondence(&shifted, jm).unwrap() {
                let c = upsilon(pair.node.comp, content(&pair.node, &u), e, l).unwrap();
                assert_eq!(content(&pair.image, &[u.iter().sum()]), c);
            }
        }
    }
}

#[test]
fn initial_translation_blocks_reduce_to_level_one() {
    let mut checked = 0;
    for b in core_family(24, 2, 10) {
        if !b.w0().is_translation() || !yz_split(&b).unwrap().condition_one() {
            continue;
        }
        let total: i64 = yz_split(&b).unwrap().y.iter().sum();
        let u: Vec<i64> = b.reduced_charge().iter().map(|r| r - total).collect();
        let s: i64 = u.iter().sum();
        let engine = CanonicalBasis::new(b.e(), b.base_charge().to_vec(), BUDGET).unwrap();
        let level_one = CanonicalBasis::new(b.e(), vec![s], BUDGET).unwrap();
        for lm in enumerate_in_block(&b, DEFAULT_ENUMERATION_BUDGET).unwrap() {
            if !lm.is_kleshchev() {
                continue;
            }
            let image = phi_u(lm.components(), &u, b.e()).unwrap();
            assert!(image.is_e_regular(b.e()));
            let g = engine.get(lm.components()).unwrap();
            let lhs = psi(&g, &u).unwrap();
            assert_eq!(lhs, *level_one.get(&[image]).unwrap(), "{lm}");
            checked += 1;
        }
    }
    assert!(checked > 0);
}
