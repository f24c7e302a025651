//! Dispersion merit of a processing technology.
//!
//! The best-case transfer distance is the average spacing of processing
//! elements, `sqrt(area / count)`; the worst case is the die diagonal scale,
//! `sqrt(area)`. Dispersion is the geometric mean of the two transfer times
//! over the clock period. All "relative" quantities are transfer times
//! divided by the clock period.

use crate::error::{ensure_positive, Error, Result};
use crate::timespace::InteractionSpeed;

#[derive(Debug, Clone, PartialEq)]
pub struct ProcessorSpec {
    pub name: String,
    pub year: i32,
    pub transistor_count: u64,
    /// m²
    pub die_area: f64,
    /// Hz
    pub clock_frequency: f64,
    /// Replaces `sqrt(die_area / transistor_count)` as the minimum distance
    /// when the element spacing is known directly (vacuum-tube machines).
    pub explicit_min_distance: Option<f64>,
}

impl ProcessorSpec {
    pub const MIN_YEAR: i32 = 1940;
    pub const MAX_YEAR: i32 = 2100;

    pub fn new(
        name: impl Into<String>,
        year: i32,
        transistor_count: u64,
        die_area: f64,
        clock_frequency: f64,
    ) -> Self {
        Self {
            name: name.into(),
            year,
            transistor_count,
            die_area,
            clock_frequency,
            explicit_min_distance: None,
        }
    }

    /// EDVAC as a spec row: 3000 tubes in a 300 m² room at 1 MHz, with the
    /// 30 cm tube spacing given explicitly.
    pub fn edvac() -> Self {
        Self {
            explicit_min_distance: Some(EDVAC_TUBE_SPACING_M),
            ..Self::new("EDVAC", 1945, 3000, EDVAC_ROOM_AREA_M2, 1e6)
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(Self::MIN_YEAR..=Self::MAX_YEAR).contains(&self.year) {
            return Err(Error::invalid(format!(
                "{}: year {} outside [{}, {}]",
                self.name,
                self.year,
                Self::MIN_YEAR,
                Self::MAX_YEAR
            )));
        }
        if self.transistor_count == 0 {
            return Err(Error::invalid(format!("{}: transistor count must be > 0", self.name)));
        }
        ensure_positive("die area", self.die_area)?;
        ensure_positive("clock frequency", self.clock_frequency)?;
        if let Some(d) = self.explicit_min_distance {
            ensure_positive("explicit minimum distance", d)?;
        }
        Ok(())
    }
}

const EDVAC_TUBE_SPACING_M: f64 = 0.3;
const EDVAC_ROOM_AREA_M2: f64 = 300.0;

/// Geometry and timing a dispersion report is computed from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DispersionInputs {
    /// m
    pub d_min: f64,
    /// m
    pub d_max: f64,
    /// s
    pub clock_period: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DispersionReport {
    pub d_min: f64,
    pub d_max: f64,
    pub t_t_min: f64,
    pub t_t_max: f64,
    pub t_p: f64,
    /// "Proc transfer": `t_t_min / t_p`.
    pub proc_transfer_rel: f64,
    /// "Cache transfer": half-die distance over the clock period.
    pub cache_transfer_rel: f64,
    pub dispersion: f64,
}

impl DispersionReport {
    pub fn max_transfer_rel(&self) -> f64 {
        self.t_t_max / self.t_p
    }
}

pub fn min_distance(spec: &ProcessorSpec) -> Result<f64> {
    spec.validate()?;
    Ok(spec
        .explicit_min_distance
        .unwrap_or_else(|| (spec.die_area / spec.transistor_count as f64).sqrt()))
}

pub fn max_distance(spec: &ProcessorSpec) -> Result<f64> {
    spec.validate()?;
    Ok(spec.die_area.sqrt())
}

impl DispersionInputs {
    pub fn from_spec(spec: &ProcessorSpec) -> Result<Self> {
        Ok(Self {
            d_min: min_distance(spec)?,
            d_max: max_distance(spec)?,
            clock_period: 1.0 / spec.clock_frequency,
        })
    }

    pub fn report(&self, speed: InteractionSpeed) -> Result<DispersionReport> {
        ensure_positive("minimum distance", self.d_min)?;
        ensure_positive("maximum distance", self.d_max)?;
        ensure_positive("clock period", self.clock_period)?;
        if self.d_min > self.d_max {
            return Err(Error::invalid(format!(
                "minimum distance {} exceeds maximum distance {}",
                self.d_min, self.d_max
            )));
        }
        let t_p = self.clock_period;
        let t_t_min = speed.travel_time(self.d_min);
        let t_t_max = speed.travel_time(self.d_max);
        Ok(DispersionReport {
            d_min: self.d_min,
            d_max: self.d_max,
            t_t_min,
            t_t_max,
            t_p,
            proc_transfer_rel: t_t_min / t_p,
            cache_transfer_rel: speed.travel_time(self.d_max / 2.0) / t_p,
            dispersion: (t_t_min * t_t_max).sqrt() / t_p,
        })
    }
}

pub fn dispersion_report(spec: &ProcessorSpec, speed: InteractionSpeed) -> Result<DispersionReport> {
    DispersionInputs::from_spec(spec)?.report(speed)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdvacPreset {
    pub inputs: DispersionInputs,
    pub speed: InteractionSpeed,
}

impl EdvacPreset {
    pub fn report(&self) -> DispersionReport {
        self.inputs
            .report(self.speed)
            .expect("EDVAC preset is valid")
    }
}

/// Calibration case: 0.3 m tube spacing, `sqrt(300)` m room scale, 1 µs
/// processing time, 3e8 m/s.
pub fn edvac_preset() -> EdvacPreset {
    EdvacPreset {
        inputs: DispersionInputs {
            d_min: EDVAC_TUBE_SPACING_M,
            d_max: EDVAC_ROOM_AREA_M2.sqrt(),
            clock_period: 1e-6,
        },
        speed: InteractionSpeed::DEFAULT,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HistoryRow {
    pub name: String,
    pub year: i32,
    pub proc_transfer_rel: f64,
    pub cache_transfer_rel: f64,
    pub dispersion: f64,
}

/// One row per spec, ordered by year. Specs sharing a year keep their input
/// order.
pub fn history_table(specs: &[ProcessorSpec], speed: InteractionSpeed) -> Result<Vec<HistoryRow>> {
    if specs.is_empty() {
        return Err(Error::invalid("history table needs at least one processor"));
    }
    let mut rows = specs
        .iter()
        .map(|spec| {
            let r = dispersion_report(spec, speed)?;
            Ok(HistoryRow {
                name: spec.name.clone(),
                year: spec.year,
                proc_transfer_rel: r.proc_transfer_rel,
                cache_transfer_rel: r.cache_transfer_rel,
                dispersion: r.dispersion,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    rows.sort_by_key(|r| r.year);
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn close(a: f64, b: f64, rel: f64) -> bool {
        (a - b).abs() <= rel * a.abs().max(b.abs())
    }

    fn chip(n: u64, area: f64, clock: f64) -> ProcessorSpec {
        ProcessorSpec::new("chip", 2000, n, area, clock)
    }

    #[test]
    fn distances() {
        assert!(close(min_distance(&chip(100_000_000, 1e-4, 1e9)).unwrap(), 1e-6, 1e-12));
        assert!(close(min_distance(&chip(1, 1e-4, 1e9)).unwrap(), 0.01, 1e-12));
        assert!(close(max_distance(&chip(1, 1e-4, 1e9)).unwrap(), 0.01, 1e-12));
        assert!(close(max_distance(&chip(1, 4e-4, 1e9)).unwrap(), 0.02, 1e-12));
        assert!(close(max_distance(&chip(1, 300.0, 1e9)).unwrap(), 17.320_508_075_688_775, 1e-12));
        // 300 m², 3000 tubes without the explicit spacing
        let d = min_distance(&chip(3000, 300.0, 1e6)).unwrap();
        assert!(close(d, 0.1f64.sqrt(), 1e-12));
        assert!((d - 0.3162).abs() < 1e-4);
    }

    #[test]
    fn invalid_specs_rejected() {
        assert!(min_distance(&chip(0, 1e-4, 1e9)).is_err());
        assert!(min_distance(&chip(10, -1e-4, 1e9)).is_err());
        assert!(max_distance(&chip(10, 0.0, 1e9)).is_err());
        assert!(dispersion_report(&chip(10, 1e-4, 0.0), InteractionSpeed::DEFAULT).is_err());
        let mut old = chip(10, 1e-4, 1e9);
        old.year = 1900;
        assert!(old.validate().is_err());
    }

    #[test]
    fn edvac_preset_values() {
        let preset = edvac_preset();
        assert_eq!(preset.inputs.d_min, 0.3);
        assert_eq!(preset.inputs.clock_period, 1e-6);
        let r = preset.report();
        // sqrt((0.3/3e8) * (sqrt(300)/3e8)) / 1e-6
        assert!(close(r.dispersion, 0.007_598_356_856_515_927, 1e-12));
        assert!(close(r.proc_transfer_rel, 1e-3, 1e-12));
        assert!(close(r.cache_transfer_rel, 0.028_867_513_459_481_294, 1e-12));
        assert!(r.dispersion <= 0.01);
    }

    #[test]
    fn edvac_spec_row_matches_preset() {
        let r = dispersion_report(&ProcessorSpec::edvac(), InteractionSpeed::DEFAULT).unwrap();
        assert!(close(r.dispersion, edvac_preset().report().dispersion, 1e-12));
    }

    #[test]
    fn single_transistor_dispersion_is_max_rel() {
        let r = dispersion_report(&chip(1, 1e-4, 1e9), InteractionSpeed::DEFAULT).unwrap();
        assert!(close(r.dispersion, r.t_t_max / r.t_p, 1e-12));
    }

    #[test]
    fn modern_chip_example() {
        let r = dispersion_report(&chip(100_000_000, 1e-4, 1e9), InteractionSpeed::DEFAULT).unwrap();
        assert!(close(r.t_t_min, 3.333_333_333_333_333_2e-15, 1e-12));
        assert!(close(r.t_t_max, 3.333_333_333_333_333_5e-11, 1e-12));
        assert!(close(r.t_p, 1e-9, 1e-12));
        assert!(close(r.dispersion, 3.333_333_333_333_333e-4, 1e-12));
    }

    #[test]
    fn history_sorted_and_deterministic() {
        let a = ProcessorSpec::new("late", 2010, 1_000_000_000, 2e-4, 3e9);
        let b = ProcessorSpec::new("early", 1972, 3500, 1.52e-5, 5e5);
        let rows = history_table(&[a.clone(), b.clone()], InteractionSpeed::DEFAULT).unwrap();
        assert_eq!(rows.iter().map(|r| r.year).collect::<Vec<_>>(), vec![1972, 2010]);

        let dup = history_table(&[b.clone(), b], InteractionSpeed::DEFAULT).unwrap();
        assert_eq!(dup[0], dup[1]);

        let edvac = history_table(&[ProcessorSpec::edvac()], InteractionSpeed::DEFAULT).unwrap();
        assert_eq!(edvac.len(), 1);
        assert!((edvac[0].dispersion - 0.0076).abs() < 1e-4);

        assert!(history_table(&[], InteractionSpeed::DEFAULT).is_err());
    }

    fn spec_strategy() -> impl Strategy<Value = ProcessorSpec> {
        (1u64..10_000_000_000, 1e-6..1e-3f64, 1e5..5e9f64)
            .prop_map(|(n, area, clock)| chip(n, area, clock))
    }

    proptest! {
        #[test]
        fn dispersion_identity(spec in spec_strategy(), speed in 1e7..3e8f64) {
            let r = dispersion_report(&spec, InteractionSpeed::new(speed).unwrap()).unwrap();
            let via_rel = (r.proc_transfer_rel * r.max_transfer_rel()).sqrt();
            prop_assert!(close(r.dispersion, via_rel, 1e-12));
            let geomean = (r.t_t_min * r.t_t_max).sqrt();
            prop_assert!(r.t_t_min <= geomean * (1.0 + 1e-12));
            prop_assert!(geomean <= r.t_t_max * (1.0 + 1e-12));
            prop_assert!(r.d_min <= r.d_max);
        }

        #[test]
        fn dispersion_linear_in_clock(spec in spec_strategy()) {
            let base = dispersion_report(&spec, InteractionSpeed::DEFAULT).unwrap().dispersion;
            let fast = ProcessorSpec { clock_frequency: spec.clock_frequency * 2.0, ..spec };
            let doubled = dispersion_report(&fast, InteractionSpeed::DEFAULT).unwrap().dispersion;
            prop_assert!(close(doubled, 2.0 * base, 1e-12));
        }

        #[test]
        fn dispersion_inverse_in_speed(spec in spec_strategy(), speed in 1e6..3e8f64, k in 1.1..10.0f64) {
            let slow = dispersion_report(&spec, InteractionSpeed::new(speed).unwrap()).unwrap().dispersion;
            let fast = dispersion_report(&spec, InteractionSpeed::new(speed * k).unwrap()).unwrap().dispersion;
            prop_assert!(close(fast * k, slow, 1e-12));
        }

        #[test]
        fn dispersion_non_increasing_in_count(spec in spec_strategy(), extra in 0u64..1_000_000) {
            let more = ProcessorSpec { transistor_count: spec.transistor_count + extra, ..spec.clone() };
            let d0 = dispersion_report(&spec, InteractionSpeed::DEFAULT).unwrap().dispersion;
            let d1 = dispersion_report(&more, InteractionSpeed::DEFAULT).unwrap().dispersion;
            prop_assert!(d1 <= d0 * (1.0 + 1e-12));
        }
    }
}
