//! Seeded generators for random neighborhood systems.

use rand::Rng;

use crate::space::LfSpace;

/// Reflexive system on `n` elements; each off-diagonal membership is drawn
/// independently with probability `density`.
pub fn random_space<R: Rng>(rng: &mut R, n: usize, density: f64) -> LfSpace {
    let sn = (0..n)
        .map(|e| {
            (0..n)
                .filter(|&x| x == e || rng.gen_bool(density))
                .collect()
        })
        .collect();
    LfSpace::new(sn).expect("generated system is reflexive")
}

/// Space whose SN relation is a random partial order on `n ≥ 2` elements,
/// so it satisfies all four axioms and T0.
pub fn random_alf_space<R: Rng>(rng: &mut R, n: usize, density: f64) -> LfSpace {
    assert!(n >= 2, "an axiom-passing space needs two elements");
    let mut order: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        order.swap(i, rng.gen_range(0..=i));
    }
    // above[i][j]: order[j] ∈ SN(order[i]), only for i < j
    let mut above = vec![vec![false; n]; n];
    let mut any = false;
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                above[i][j] = true;
                any = true;
            }
        }
    }
    if !any {
        above[0][1] = true;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if above[i][k] && above[k][j] {
                    above[i][j] = true;
                }
            }
        }
    }
    let mut sn = vec![Vec::new(); n];
    for i in 0..n {
        sn[order[i]].push(order[i]);
        for j in 0..n {
            if above[i][j] {
                sn[order[i]].push(order[j]);
            }
        }
    }
    LfSpace::new(sn).expect("generated system is reflexive")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn alf_spaces_pass_axioms() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 2..=8 {
            for _ in 0..20 {
                let s = random_alf_space(&mut rng, n, 0.4);
                assert!(s.verify_axioms(n <= 6).all_pass());
            }
        }
    }

    #[test]
    fn random_spaces_are_reproducible() {
        let a = random_space(&mut ChaCha8Rng::seed_from_u64(3), 6, 0.3);
        let b = random_space(&mut ChaCha8Rng::seed_from_u64(3), 6, 0.3);
        assert_eq!(a, b);
    }
}
