use fibre_emit_core::atom::{AtomData, Level};
use fibre_emit_core::guided::Fibre;
use fibre_emit_core::halfint::Half;
use fibre_emit_core::rates::{channel_rates, Knobs, Site};
use std::time::Instant;

fn main() {
    let atom = AtomData::builtin();
    let knobs = Knobs::default();
    let upper = Level::parse("10s1/2").unwrap();
    let a = 360.0e-9;
    let site = Site::new(a, 0.0).unwrap();
    for channel in atom.channels_from(upper).unwrap() {
        let n1 = atom.dispersion.index_at(channel.wavelength);
        let slope = atom.dispersion.dn_domega_at(channel.wavelength);
        let fibre = Fibre::new(a, n1, 1.0).unwrap();
        let t0 = Instant::now();
        let out = channel_rates(&fibre, &channel, slope, Half::HALF, site, &knobs);
        let dt = t0.elapsed().as_secs_f64();
        match out {
            Ok(r) => eprintln!(
                "{} -> {}: g = {:.6e}, r = {:.6e}  ({dt:.2} s)",
                channel.upper, channel.lower, r.guided, r.radiative
            ),
            Err(e) => eprintln!("{} -> {}: {e}  ({dt:.2} s)", channel.upper, channel.lower),
        }
    }
}
