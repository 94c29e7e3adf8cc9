//! Special functions against values from a 40-digit mpmath evaluation.

// reference digits are kept as printed
#![allow(clippy::excessive_precision)]

use saespec::specfun::{bessel_i, bessel_k, digamma, gamma, kummer_m, tricomi_psi, whittaker_w};

fn check(name: &str, got: f64, want: f64, tol: f64) {
    let err = (got - want).abs() / want.abs();
    assert!(err <= tol, "{name}: {got:e} vs {want:e} (rel {err:.2e} > {tol:e})");
}

#[test]
fn gamma_and_digamma() {
    for (x, want) in [(0.1, 9.5135076986687312858), (2.5, 1.3293403881791370205), (-1.5, 2.3632718012073547031), (7.3, 1.2714236336639088399e3)] {
        check(&format!("gamma({x})"), gamma(x).unwrap(), want, 1e-13);
    }
    for (x, want) in [(0.3, -3.5025242222001331249), (1.0, -5.7721566490153286061e-1), (4.7, 1.4374238096317816982)] {
        check(&format!("digamma({x})"), digamma(x).unwrap(), want, 1e-13);
    }
}

#[test]
fn confluent_hypergeometric() {
    for ((a, b, z), want) in [((0.3, 1.5, 2.0), 1.7466870206603155345), ((-2.5, 0.7, 5.0), 7.2882557097998230997), ((1.2, 2.2, 3.0), 7.0425251640981793373), ((0.7, 1.3, 25.0), 7270792052.3930444298)] {
        check(&format!("M({a}, {b}, {z})"), kummer_m(a, b, z).unwrap(), want, 1e-11);
    }
    for ((a, b, z), want) in [((0.3, 1.5, 2.0), 8.3252987090257327153e-1), ((1.7, 0.6, 8.0), 2.042417294036508997e-2), ((0.4, 1.8, 0.5), 1.6069175574587749343)] {
        check(&format!("U({a}, {b}, {z})"), tricomi_psi(a, b, z).unwrap(), want, 1e-9);
    }
    for ((k, mu, z), want) in [((0.7, 0.25, 1.5), 6.3562975143710537185e-1), ((1.3, 0.1, 4.0), 6.9172676753529163195e-1), ((0.0, 0.4, 10.0), 6.6826387026828192109e-3)] {
        check(&format!("W({k}, {mu}, {z})"), whittaker_w(k, mu, z).unwrap(), want, 1e-9);
    }
}

#[test]
fn modified_bessel() {
    for ((nu, x), want) in [((0.3, 0.7), 8.9190022275282291232e-1), ((-0.3, 0.7), 1.2470498773456527678), ((0.45, 12.0), 1.8782441715660305087e4), ((-0.2, 35.0), 1.0727659556058200005e14)] {
        check(&format!("I({nu}, {x})"), bessel_i(nu, x).unwrap(), want, 1e-12);
    }
    for ((nu, x), want) in [((0.3, 0.7), 6.895624897569750649e-1), ((0.1, 10.0), 1.7788551507869295617e-5), ((0.45, 25.0), 3.4779492811077033655e-12), ((0.25, 1.9), 1.3060056344708003456e-1)] {
        check(&format!("K({nu}, {x})"), bessel_k(nu, x).unwrap(), want, 1e-12);
    }
}
