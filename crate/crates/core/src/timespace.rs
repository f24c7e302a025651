//! Time-space coordinates.
//!
//! Every coordinate is a time: the time a signal travelling at the system's
//! interaction speed needs to reach that position from the origin. Distances
//! between points are therefore transfer times, and the only place a physical
//! speed appears is [`meters_to_timepoint`].

use std::fmt;

use crate::error::{ensure_finite, ensure_non_negative, ensure_positive, Error, Result};

/// A position in time-space, in seconds along each axis.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct TimePoint {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl TimePoint {
    pub const ORIGIN: TimePoint = TimePoint {
        x: 0.0,
        y: 0.0,
        z: 0.0,
    };

    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y, z: 0.0 }
    }

    pub const fn new3(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn validate(&self) -> Result<()> {
        ensure_finite("x coordinate", self.x)?;
        ensure_finite("y coordinate", self.y)?;
        ensure_finite("z coordinate", self.z)?;
        Ok(())
    }

    /// Straight-line time-space distance. Does not validate.
    pub fn distance(&self, other: &TimePoint) -> f64 {
        let dx = other.x - self.x;
        let dy = other.y - self.y;
        let dz = other.z - self.z;
        dx.hypot(dy).hypot(dz)
    }

    pub fn scaled(&self, k: f64) -> Self {
        Self::new3(self.x * k, self.y * k, self.z * k)
    }
}

impl fmt::Display for TimePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.z == 0.0 {
            write!(f, "({}, {})", self.x, self.y)
        } else {
            write!(f, "({}, {}, {})", self.x, self.y, self.z)
        }
    }
}

/// Signal propagation speed in m/s.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InteractionSpeed(f64);

impl InteractionSpeed {
    /// Electromagnetic propagation in vacuum.
    pub const DEFAULT: InteractionSpeed = InteractionSpeed(3e8);

    pub fn new(meters_per_second: f64) -> Result<Self> {
        ensure_positive("interaction speed", meters_per_second).map(Self)
    }

    pub fn get(self) -> f64 {
        self.0
    }

    /// Time to cover `meters` at this speed.
    pub fn travel_time(self, meters: f64) -> f64 {
        meters / self.0
    }
}

impl Default for InteractionSpeed {
    fn default() -> Self {
        Self::DEFAULT
    }
}

/// A component placed in time-space together with its processing time.
#[derive(Debug, Clone, PartialEq)]
pub struct ComputingElement {
    pub id: String,
    pub position: TimePoint,
    pub processing_time: f64,
}

impl ComputingElement {
    pub fn new(id: impl Into<String>, position: TimePoint, processing_time: f64) -> Self {
        Self {
            id: id.into(),
            position,
            processing_time,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.position.validate()?;
        ensure_non_negative("processing time", self.processing_time)?;
        Ok(())
    }
}

/// Timing of a source element whose result is consumed by an observer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainTiming {
    pub t_p_source: f64,
    pub t_p_observer: f64,
    /// Transfer time between the two elements.
    pub t_t: f64,
    /// Idle time of the observer waiting for its operand; equals `t_t`.
    pub t_i: f64,
    /// Projection onto the time axis: `t_p_source + t_t + t_p_observer`.
    pub completion: f64,
    /// Length of the resultant time-space vector.
    pub apparent: f64,
    /// `t_t / t_p_source`; `None` when the source has zero processing time.
    pub ratio_r: Option<f64>,
}

/// Length of the polyline `from -> waypoints... -> to`.
pub fn transfer_time(from: &TimePoint, to: &TimePoint, waypoints: &[TimePoint]) -> Result<f64> {
    from.validate()?;
    to.validate()?;
    for w in waypoints {
        w.validate()?;
    }
    let mut total = 0.0;
    let mut prev = from;
    for p in waypoints.iter().chain(std::iter::once(to)) {
        total += prev.distance(p);
        prev = p;
    }
    Ok(total)
}

pub fn meters_to_timepoint(coords_m: [f64; 3], speed: InteractionSpeed) -> Result<TimePoint> {
    for c in coords_m {
        ensure_finite("coordinate", c)?;
    }
    let [x, y, z] = coords_m.map(|c| speed.travel_time(c));
    Ok(TimePoint::new3(x, y, z))
}

/// Apparent processing time of two equal elements separated by `t_t`:
/// `sqrt(t_t^2 + (2 t_p + t_t)^2)`.
pub fn apparent_time(t_p: f64, t_t: f64) -> Result<f64> {
    ensure_finite("processing time", t_p)?;
    if t_p <= 0.0 {
        return Err(Error::invalid(format!(
            "processing time must be > 0 for the apparent time, got {t_p}"
        )));
    }
    ensure_non_negative("transfer time", t_t)?;
    Ok(t_t.hypot(2.0 * t_p + t_t))
}

/// Builds the two-element chain: `source` computes, its result travels to
/// `observer`, which then computes on it.
///
/// With unequal processing times the apparent time uses the legs
/// `(t_t, t_p_source + t_t + t_p_observer)`, which reduces to
/// [`apparent_time`] when the two are equal.
pub fn chain_two(
    source: &ComputingElement,
    observer: &ComputingElement,
    waypoints: &[TimePoint],
) -> Result<ChainTiming> {
    source.validate()?;
    observer.validate()?;
    let t_t = transfer_time(&source.position, &observer.position, waypoints)?;
    let (tp_s, tp_o) = (source.processing_time, observer.processing_time);
    let completion = tp_s + t_t + tp_o;
    let apparent = if tp_s == tp_o && tp_s > 0.0 {
        apparent_time(tp_s, t_t)?
    } else {
        t_t.hypot(completion)
    };
    Ok(ChainTiming {
        t_p_source: tp_s,
        t_p_observer: tp_o,
        t_t,
        t_i: t_t,
        completion,
        apparent,
        ratio_r: (tp_s > 0.0).then(|| t_t / tp_s),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn close(a: f64, b: f64, rel: f64) -> bool {
        (a - b).abs() <= rel * a.abs().max(b.abs())
    }

    #[test]
    fn axis_aligned_transfer() {
        let t = transfer_time(&TimePoint::ORIGIN, &TimePoint::new(0.0, 1e-9), &[]).unwrap();
        assert_eq!(t, 1e-9);
        let t = transfer_time(&TimePoint::ORIGIN, &TimePoint::new(3.0, 4.0), &[]).unwrap();
        assert_eq!(t, 5.0);
    }

    #[test]
    fn transfer_via_waypoint() {
        let t = transfer_time(
            &TimePoint::ORIGIN,
            &TimePoint::new(1.0, 0.0),
            &[TimePoint::new(0.0, 1.0)],
        )
        .unwrap();
        assert!(close(t, 2.414_213_562_373_095, 1e-12));
    }

    #[test]
    fn non_finite_coordinate_rejected() {
        let bad = TimePoint::new(f64::NAN, 0.0);
        assert!(matches!(
            transfer_time(&TimePoint::ORIGIN, &bad, &[]),
            Err(Error::InvalidInput(_))
        ));
        let inf = TimePoint::new3(0.0, 0.0, f64::INFINITY);
        assert!(transfer_time(&TimePoint::ORIGIN, &TimePoint::ORIGIN, &[inf]).is_err());
    }

    #[test]
    fn meters_conversion() {
        let c = InteractionSpeed::DEFAULT;
        let p = meters_to_timepoint([0.3, 0.0, 0.0], c).unwrap();
        assert!(close(p.x, 1e-9, 1e-12));
        assert_eq!((p.y, p.z), (0.0, 0.0));
        assert_eq!(meters_to_timepoint([0.0; 3], c).unwrap(), TimePoint::ORIGIN);
        let p = meters_to_timepoint([300.0, 0.0, 0.0], c).unwrap();
        assert!(close(p.x, 1e-6, 1e-12));
    }

    #[test]
    fn speed_must_be_positive() {
        assert!(InteractionSpeed::new(0.0).is_err());
        assert!(InteractionSpeed::new(-3e8).is_err());
        assert!(InteractionSpeed::new(f64::INFINITY).is_err());
    }

    #[test]
    fn apparent_examples() {
        assert_eq!(apparent_time(1.0, 0.0).unwrap(), 2.0);
        let a = apparent_time(1.0, 1.0).unwrap();
        assert!(close(a, 10f64.sqrt(), 1e-12));
        assert!(a > 3.0);
        assert!(close(apparent_time(2.0, 1.0).unwrap(), 26f64.sqrt(), 1e-12));
    }

    #[test]
    fn apparent_rejects_bad_times() {
        assert!(apparent_time(0.0, 1.0).is_err());
        assert!(apparent_time(-1.0, 1.0).is_err());
        assert!(apparent_time(1.0, -0.5).is_err());
    }

    #[test]
    fn apparent_matches_ratio_form() {
        for (tp, tt) in [(1.0, 0.5), (3.0, 7.0), (0.25, 0.001)] {
            let r: f64 = tt / tp;
            let via_r = tp * (r * r + (2.0 + r) * (2.0 + r)).sqrt();
            assert!(close(apparent_time(tp, tt).unwrap(), via_r, 1e-12));
        }
    }

    #[test]
    fn chain_examples() {
        let src = ComputingElement::new("s", TimePoint::ORIGIN, 1.0);
        let obs = ComputingElement::new("o", TimePoint::new(1.0, 0.0), 1.0);
        let c = chain_two(&src, &obs, &[]).unwrap();
        assert_eq!((c.t_t, c.t_i, c.completion), (1.0, 1.0, 3.0));
        assert!(close(c.apparent, 10f64.sqrt(), 1e-12));
        assert_eq!(c.ratio_r, Some(1.0));

        let colocated = ComputingElement::new("o", TimePoint::ORIGIN, 1.0);
        let c = chain_two(&src, &colocated, &[]).unwrap();
        assert_eq!((c.t_t, c.t_i, c.completion, c.apparent), (0.0, 0.0, 2.0, 2.0));

        let far = ComputingElement::new("o", TimePoint::new(2.0, 0.0), 1.0);
        let c = chain_two(&src, &far, &[]).unwrap();
        assert_eq!(c.completion, 4.0);
        assert!(close(c.apparent, 20f64.sqrt(), 1e-12));
    }

    #[test]
    fn chain_unequal_processing_times() {
        let src = ComputingElement::new("s", TimePoint::ORIGIN, 1.0);
        let obs = ComputingElement::new("o", TimePoint::new(0.0, 3.0), 2.0);
        let c = chain_two(&src, &obs, &[]).unwrap();
        assert_eq!(c.completion, 6.0);
        assert!(close(c.apparent, 45f64.sqrt(), 1e-12));

        let zero = ComputingElement::new("z", TimePoint::ORIGIN, 0.0);
        let c = chain_two(&zero, &obs, &[]).unwrap();
        assert_eq!(c.ratio_r, None);
        assert_eq!(c.completion, 5.0);
    }

    #[test]
    fn chain_rejects_negative_processing_time() {
        let src = ComputingElement::new("s", TimePoint::ORIGIN, -1.0);
        let obs = ComputingElement::new("o", TimePoint::ORIGIN, 1.0);
        assert!(chain_two(&src, &obs, &[]).is_err());
    }

    fn point() -> impl Strategy<Value = TimePoint> {
        (-10.0..10.0f64, -10.0..10.0f64, -10.0..10.0f64).prop_map(|(x, y, z)| TimePoint::new3(x, y, z))
    }

    proptest! {
        #[test]
        fn apparent_zero_transfer_is_twice_tp(tp in 1e-9..10.0f64) {
            prop_assert_eq!(apparent_time(tp, 0.0).unwrap(), 2.0 * tp);
        }

        #[test]
        fn apparent_strictly_increasing(tp in 0.01..10.0f64, tt in 0.0..10.0f64, d in 0.01..1.0f64) {
            let base = apparent_time(tp, tt).unwrap();
            prop_assert!(apparent_time(tp + d, tt).unwrap() > base);
            prop_assert!(apparent_time(tp, tt + d).unwrap() > base);
        }

        #[test]
        fn apparent_bounds_completion(tp in 0.01..10.0f64, tt in 0.0..10.0f64) {
            let a = apparent_time(tp, tt).unwrap();
            let completion = 2.0 * tp + tt;
            prop_assert!(a >= completion);
            if tt > 0.0 {
                prop_assert!(a > completion);
            }
        }

        #[test]
        fn waypoints_never_shorten(a in point(), b in point(), w in point()) {
            let direct = transfer_time(&a, &b, &[]).unwrap();
            let via = transfer_time(&a, &b, &[w]).unwrap();
            prop_assert!(via >= direct * (1.0 - 1e-12));
        }

        #[test]
        fn reversed_path_same_length(a in point(), b in point(), ws in proptest::collection::vec(point(), 0..4)) {
            let fwd = transfer_time(&a, &b, &ws).unwrap();
            let rev: Vec<_> = ws.iter().rev().copied().collect();
            let back = transfer_time(&b, &a, &rev).unwrap();
            prop_assert!(close(fwd, back, 1e-12) || (fwd - back).abs() < 1e-12);
        }

        #[test]
        fn idle_equals_transfer(a in point(), b in point(), tp in 0.0..5.0f64) {
            let c = chain_two(
                &ComputingElement::new("s", a, tp),
                &ComputingElement::new("o", b, tp),
                &[],
            ).unwrap();
            prop_assert_eq!(c.t_i, c.t_t);
            prop_assert!(c.apparent >= c.completion);
        }

        #[test]
        fn unit_homogeneity(a in point(), b in point(), tps in 0.01..5.0f64, tpo in 0.01..5.0f64, k in 0.001..1000.0f64) {
            let c1 = chain_two(
                &ComputingElement::new("s", a, tps),
                &ComputingElement::new("o", b, tpo),
                &[],
            ).unwrap();
            let c2 = chain_two(
                &ComputingElement::new("s", a.scaled(k), tps * k),
                &ComputingElement::new("o", b.scaled(k), tpo * k),
                &[],
            ).unwrap();
            prop_assert!(close(c2.t_t, c1.t_t * k, 1e-12) || c1.t_t == 0.0);
            prop_assert!(close(c2.completion, c1.completion * k, 1e-12));
            prop_assert!(close(c2.apparent, c1.apparent * k, 1e-12));
        }
    }
}
