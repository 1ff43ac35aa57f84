use dst_core::{FocalIndex, Frame, MassFunction};

pub fn example3() -> MassFunction {
    let frame = Frame::new(["A", "B", "C"]).unwrap();
    MassFunction::from_dense(
        frame,
        vec![0.0, 1.0 / 18.0, 1.0 / 6.0, 1.0 / 9.0, 1.0 / 6.0, 1.0 / 18.0, 2.0 / 9.0, 2.0 / 9.0],
    )
    .unwrap()
}

pub fn bba(n: usize, entries: &[(u32, f64)]) -> MassFunction {
    let frame = Frame::numbered(n).unwrap();
    let mut v = vec![0.0; frame.size()];
    for &(f, m) in entries {
        v[FocalIndex(f).index()] += m;
    }
    MassFunction::from_dense(frame, v).unwrap()
}
