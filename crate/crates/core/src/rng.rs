//! Seeded random streams. One user seed fans out into independent labeled
//! sub-streams so that, e.g., sampling does not shift when the generator draws
//! more numbers.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn label_hash(label: &str) -> u64 {
    // FNV-1a
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in label.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

pub fn stream(seed: u64, label: &str) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(label_hash(label));
    rng
}

/// A derived seed, for handing a sub-stream's seed to another component.
pub fn derive(seed: u64, label: &str) -> u64 {
    use rand::RngCore;
    stream(seed, label).next_u64()
}
