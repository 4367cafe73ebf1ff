//! Cycle-index coefficients Z_m against their binomial-series closed forms.

use num_rational::BigRational;

use borwein::charsieve::{
    binom_product_coeff, binom_series_coeff, cycle_types, periodic_t, power_sum_t, z_m,
};

fn main() {
    for ct in cycle_types(4) {
        println!("type {:?}: {} permutations, sign {}", ct.counts(), ct.permutation_count(), ct.sign());
    }

    // t_i = a when ell | i: Z_m = [u^m] (1 - u^ell)^{-a/ell}
    let (ell, a) = (3, -4);
    for m in 0..=9 {
        let z = z_m(&periodic_t(ell, a, m));
        assert_eq!(z, binom_series_coeff(ell, a, m as u64));
        println!("ell = {ell}, a = {a}, m = {m}: {z}");
    }

    let points = [
        BigRational::from_integer(1.into()),
        BigRational::from_integer((-1).into()),
        BigRational::new(1.into(), 2.into()),
    ];
    for m in 0..=6 {
        let z = z_m(&power_sum_t(&points, 2, 3, m));
        assert_eq!(z, binom_product_coeff(&points, 2, 3, m as u64));
        println!("B = {{1, -1, 1/2}}, m = {m}: {z}");
    }
}
