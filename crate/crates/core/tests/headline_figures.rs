//! Headline figures recomputed from the raw constants in plain f64.

use std::f64::consts::{LN_2, PI};

use approx::assert_relative_eq;
use infobound::bounds::{bh_entropy, holographic_bound, lloyd_bound, BoundMethod};
use infobound::cosmology::{desitter_radius_from_density, horizon_area};
use infobound::units::ConstantsSet;
use infobound::vacuum::{collapse_bound_density, planck_cutoff_density, PlanckConvention};

const C: f64 = 299_792_458.0;
const G: f64 = 6.674_30e-11;
const HBAR: f64 = 1.054_571_817e-34;

fn k() -> ConstantsSet {
    ConstantsSet::default()
}

#[test]
fn desitter_holographic_bits() {
    let rho = 6e-10;
    let r = C / (8.0 * PI * G * rho / (3.0 * C * C)).sqrt();
    let bits = PI * r * r * C.powi(3) / (HBAR * G);

    let radius = desitter_radius_from_density(rho, &k()).unwrap().value();
    assert_relative_eq!(radius, r, max_relative = 1e-13);
    let area = horizon_area(radius).unwrap().value();
    let bound = holographic_bound(area, BoundMethod::HolographicEvent, &k()).unwrap();
    assert_relative_eq!(bound.bits, bits, max_relative = 1e-12);
    assert!((bound.log10_bits - 122.0).abs() < 1.0);
}

#[test]
fn solar_mass_black_hole() {
    let m = 1.989e30;
    let s = 4.0 * PI * G * m * m / (HBAR * C);
    let rec = bh_entropy(m, &k()).unwrap();
    assert_relative_eq!(rec.entropy_over_k, s, max_relative = 1e-12);
    assert_relative_eq!(rec.bits, s / LN_2, max_relative = 1e-12);
    assert_relative_eq!(rec.schwarzschild_radius_m, 2.0 * G * m / (C * C), max_relative = 1e-12);
    assert!((rec.entropy_over_k.log10() - 77.0).abs() < 0.1);
}

#[test]
fn planck_cutoff_density_both_conventions() {
    let tp = (HBAR * G / C.powi(5)).sqrt();
    for (conv, omega) in [(PlanckConvention::Inverse, 1.0 / tp), (PlanckConvention::Angular, 2.0 * PI / tp)] {
        let rho = HBAR * omega.powi(4) / (16.0 * PI * PI * C.powi(3));
        let est = planck_cutoff_density(conv, &k()).unwrap();
        assert_relative_eq!(est.rho_j_m3, rho, max_relative = 1e-12);
        assert!((est.rho_j_m3.log10() - 113.0).abs() <= 2.0);
    }
}

#[test]
fn collapse_density_at_hubble_radius() {
    let l = C / (67.7e3 / 3.0857e22);
    let est = collapse_bound_density(l, &k()).unwrap();
    assert_relative_eq!(est.rho_j_m3, C.powi(4) / (G * l * l), max_relative = 1e-12);
}

#[test]
fn quadratic_time_scaling() {
    let age = 4.352_441_904_369_164_5e17;
    let b = lloyd_bound(1e-34, 1e122, age).unwrap();
    assert_relative_eq!(b.bits, 1e122 * (1e-34 / age) * (1e-34 / age), max_relative = 1e-12);
    let far = lloyd_bound(1e200, 1e122, age).unwrap();
    assert!(far.bits.is_infinite() || far.log10_bits > 300.0);
    assert_relative_eq!(far.log10_bits, 122.0 + 2.0 * (200.0 - age.log10()), max_relative = 1e-14);
}
