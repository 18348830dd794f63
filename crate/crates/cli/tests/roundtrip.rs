use alftop_cli::{
    parse_hex_sidecar, parse_lfs, parse_pgm, parse_vol, write_hex_sidecar, write_lfs, write_pgm,
    write_vol,
};
use alftop_core::sample::random_space;
use alftop_core::{fixtures, DigitalImage, GrayImage2D};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn gray() -> impl Strategy<Value = GrayImage2D> {
    (1usize..7, 1usize..7).prop_flat_map(|(w, h)| {
        proptest::collection::vec(any::<u16>(), w * h)
            .prop_map(move |labels| GrayImage2D::new(w, h, labels).unwrap())
    })
}

fn volume() -> impl Strategy<Value = DigitalImage> {
    (1usize..5, 1usize..5, 1usize..5).prop_flat_map(|(x, y, z)| {
        proptest::collection::vec(any::<bool>(), x * y * z)
            .prop_map(move |mask| DigitalImage::new(vec![x, y, z], mask).unwrap())
    })
}

proptest! {
    #[test]
    fn pgm_round_trip(img in gray()) {
        let text = write_pgm(&img);
        let back = parse_pgm(text.as_bytes()).unwrap();
        prop_assert_eq!(&back, &img);
        prop_assert_eq!(write_pgm(&back), text);
    }

    #[test]
    fn vol_round_trip(img in volume()) {
        let text = write_vol(&img);
        let back = parse_vol(text.as_bytes()).unwrap();
        prop_assert_eq!(&back, &img);
        prop_assert_eq!(write_vol(&back), text);
    }

    #[test]
    fn lfs_round_trip(seed in any::<u64>(), n in 1usize..10, density in 0.0f64..0.8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let space = random_space(&mut rng, n, density);
        let text = write_lfs(&space);
        let back = parse_lfs(text.as_bytes()).unwrap();
        prop_assert_eq!(&back, &space);
        prop_assert_eq!(write_lfs(&back), text);
    }

    #[test]
    fn sidecar_round_trip(w in 1usize..6, words in proptest::collection::vec(0u8..32, 1..30)) {
        let h = words.len().div_ceil(w);
        let mut bits = words.clone();
        bits.resize(w * h, 0);
        let text = write_hex_sidecar(&bits, w);
        prop_assert_eq!(parse_hex_sidecar(text.as_bytes(), w, h).unwrap(), bits);
    }
}

#[test]
fn fixtures_round_trip() {
    let k5 = fixtures::k5();
    assert_eq!(parse_lfs(write_lfs(&k5).as_bytes()).unwrap(), k5);
    let two_v = fixtures::two_v();
    assert_eq!(parse_pgm(write_pgm(&two_v).as_bytes()).unwrap(), two_v);
}
