use kunz::{is_kunz_vector, KunzCoordinates, NumericalSemigroup};
use rand::Rng;

/// Rejection-samples a Kunz vector with coordinates in `[1, max_coord]`.
pub fn random_kunz<R: Rng>(rng: &mut R, m: i64, max_coord: i64) -> KunzCoordinates {
    loop {
        let coords: Vec<i64> =
            (0..m - 1).map(|_| rng.gen_range(1..=max_coord)).collect();
        if is_kunz_vector(m, &coords).unwrap() {
            return KunzCoordinates::new(m, coords).unwrap();
        }
    }
}

/// Random semigroup with multiplicity in `[m_lo, m_hi]` and the other
/// generators drawn from `[m+1, gen_hi]`.
pub fn random_semigroup<R: Rng>(rng: &mut R, m_lo: i64, m_hi: i64, gen_hi: i64) -> KunzCoordinates {
    loop {
        let m = rng.gen_range(m_lo..=m_hi);
        let count = rng.gen_range(2..=7);
        let mut gens = vec![m];
        for _ in 0..count {
            gens.push(rng.gen_range(m + 1..=gen_hi));
        }
        let Ok(s) = NumericalSemigroup::new(&gens) else { continue };
        if s.multiplicity() != m {
            continue;
        }
        return s.kunz_coordinates().unwrap();
    }
}
