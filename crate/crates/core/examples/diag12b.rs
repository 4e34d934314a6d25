use fibre_emit_core::atom::{AtomData, Level};
use fibre_emit_core::consts;
use fibre_emit_core::guided::Fibre;
use fibre_emit_core::radiative::build_mode;

fn main() {
    let atom = AtomData::builtin();
    let upper = Level::parse("10s1/2").unwrap();
    let channel = atom
        .channels_from(upper)
        .unwrap()
        .into_iter()
        .find(|c| c.lower == Level::parse("3p1/2").unwrap())
        .unwrap();
    let a = 360e-9;
    let n1 = atom.dispersion.index_at(channel.wavelength);
    let fibre = Fibre::new(a, n1, 1.0).unwrap();
    let omega = channel.omega;
    let edge = omega / consts::C_LIGHT;
    let theta0 = -1.554222800419927_f64;
    println!("n1 = {n1}, ka = {}, kappa*a at theta0 = {}", edge * a,
        a * (n1 * n1 * edge * edge - (edge * theta0.sin()).powi(2)).sqrt());
    // Scan each m near theta0 to find which order carries the spike.
    for m in 0..=6 {
        let mut vals = Vec::new();
        for k in -3..=3i32 {
            let theta = theta0 + k as f64 * 1e-7;
            let beta = edge * theta.sin();
            let mode = build_mode(&fibre, omega, beta, m, 1).unwrap();
            let e = mode.profile(a);
            vals.push(e.iter().map(|c| c.norm_sqr()).sum::<f64>());
        }
        println!("m = {m}: |e(a)|^2 over theta0 + k*1e-7: {:?}", vals);
    }
}
