use fibre_emit_core::atom::{AtomData, Level};
use fibre_emit_core::guided::Fibre;
use fibre_emit_core::halfint::Half;
use fibre_emit_core::rates::{channel_rates, Knobs, Site};

fn main() {
    let atom = AtomData::builtin();
    let knobs = Knobs::default();
    let upper = Level::parse("10s1/2").unwrap();
    for k in 3..=20 {
        let a = 20.0e-9 * k as f64;
        let site = Site::new(a, 0.0).unwrap();
        for channel in atom.channels_from(upper).unwrap() {
            let n1 = atom.dispersion.index_at(channel.wavelength);
            let slope = atom.dispersion.dn_domega_at(channel.wavelength);
            let fibre = Fibre::new(a, n1, 1.0).unwrap();
            if let Err(e) = channel_rates(&fibre, &channel, slope, Half::HALF, site, &knobs) {
                println!(
                    "a = {:.0} nm, channel {} -> {} (λ = {:.4} µm): {e}",
                    a * 1e9,
                    channel.upper,
                    channel.lower,
                    channel.wavelength * 1e6
                );
            }
        }
    }
    println!("sweep done");
}
