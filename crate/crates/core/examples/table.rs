use std::time::Instant;

use pvk_core::ktheory::kgroups_of_anzai;

fn main() {
    let max: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(11);
    for n in 1..=max {
        let t = Instant::now();
        let k = kgroups_of_anzai(n).unwrap();
        println!(
            "{n:>2}  K0 = {}  K1 = {}  ({:.2?})",
            k.k0,
            k.k1,
            t.elapsed()
        );
    }
}
