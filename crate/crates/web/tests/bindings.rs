use gbar_web::{delange_curve, factorization, order_series, WEB_EXACT_CAP};

#[test]
fn factorization_strings() {
    assert_eq!(factorization(1).unwrap(), "1 = 1");
    assert_eq!(factorization(5).unwrap(), "2500 = 2^2 * 5^4");
    assert_eq!(factorization(7).unwrap(), "26471025 = 3^2 * 5^2 * 7^6");
    assert!(factorization(WEB_EXACT_CAP + 1).is_err());
}

#[test]
fn order_series_values() {
    let s = order_series(2, 16, false).unwrap();
    assert_eq!(s.len(), 16);
    assert_eq!(s[7], 17.0);
    assert_eq!(s[15], 49.0);
    let scaled = order_series(2, 1023, true).unwrap();
    assert!(scaled.iter().all(|v| (0.0..2.0).contains(v)));
    assert!(order_series(4, 10, false).is_err());
}

#[test]
fn delange_curve_layout() {
    let c = delange_curve(2, 8).unwrap();
    assert_eq!(c.len(), 16);
    assert_eq!(&c[..2], &[0.0, 0.0]);
    assert!(c.chunks(2).all(|xy| xy[1] <= 0.0));
    assert!(delange_curve(1, 8).is_err());
}
