use std::fmt;
use std::time::{Duration, Instant};

/// Which counter timestamps come from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TimerKind {
    /// The x86 time-stamp counter, fenced with `lfence` on both sides.
    Tsc,
    /// `std::time::Instant`, in nanoseconds.
    Monotonic,
}

impl TimerKind {
    pub fn name(self) -> &'static str {
        match self {
            TimerKind::Tsc => "rdtsc",
            TimerKind::Monotonic => "monotonic-ns",
        }
    }

    /// Unit of one tick in reports.
    pub fn unit(self) -> &'static str {
        match self {
            TimerKind::Tsc => "ticks",
            TimerKind::Monotonic => "ns",
        }
    }
}

/// A high-resolution timestamp source with its measured properties.
#[derive(Clone, Debug)]
pub struct Timer {
    kind: TimerKind,
    origin: Instant,
    /// Smallest observed nonzero difference between consecutive reads.
    resolution: u64,
    /// Ticks per second, measured against the monotonic clock.
    frequency: f64,
}

impl Timer {
    /// The best available timer: the time-stamp counter on x86-64, the
    /// monotonic clock elsewhere.
    pub fn detect() -> Timer {
        if cfg!(target_arch = "x86_64") {
            Timer::calibrate(TimerKind::Tsc)
        } else {
            Timer::calibrate(TimerKind::Monotonic)
        }
    }

    pub fn monotonic() -> Timer {
        Timer::calibrate(TimerKind::Monotonic)
    }

    fn calibrate(kind: TimerKind) -> Timer {
        let mut timer = Timer {
            kind,
            origin: Instant::now(),
            resolution: 1,
            frequency: 1e9,
        };
        timer.resolution = timer.measure_resolution();
        if kind == TimerKind::Tsc {
            timer.frequency = timer.measure_frequency(Duration::from_millis(20));
        }
        timer
    }

    fn measure_resolution(&self) -> u64 {
        let mut best = u64::MAX;
        for _ in 0..1000 {
            let a = self.start();
            let mut b = self.stop();
            while b == a {
                b = self.stop();
            }
            best = best.min(b.wrapping_sub(a));
        }
        best.max(1)
    }

    fn measure_frequency(&self, span: Duration) -> f64 {
        let t0 = Instant::now();
        let c0 = self.start();
        while t0.elapsed() < span {
            std::hint::spin_loop();
        }
        let c1 = self.stop();
        (c1.wrapping_sub(c0)) as f64 / t0.elapsed().as_secs_f64()
    }

    pub fn kind(&self) -> TimerKind {
        self.kind
    }

    pub fn resolution(&self) -> u64 {
        self.resolution
    }

    pub fn frequency(&self) -> f64 {
        self.frequency
    }

    /// Timestamp at the start of a timed region: earlier instructions retire
    /// before the counter is read.
    #[inline(always)]
    pub fn start(&self) -> u64 {
        match self.kind {
            #[cfg(target_arch = "x86_64")]
            // SAFETY: lfence and rdtsc are part of the x86-64 baseline.
            TimerKind::Tsc => unsafe {
                use core::arch::x86_64::{_mm_lfence, _rdtsc};
                _mm_lfence();
                let t = _rdtsc();
                _mm_lfence();
                t
            },
            _ => self.origin.elapsed().as_nanos() as u64,
        }
    }

    /// Timestamp at the end of a timed region.
    #[inline(always)]
    pub fn stop(&self) -> u64 {
        self.start()
    }
}

/// What a benchmark report needs to be interpreted on its own machine.
#[derive(Clone, Debug, PartialEq)]
pub struct Fingerprint {
    pub timer: &'static str,
    pub unit: &'static str,
    pub ticks_per_second: f64,
    pub resolution: u64,
    pub backend: &'static str,
    pub arch: &'static str,
}

impl Fingerprint {
    pub fn of(timer: &Timer) -> Fingerprint {
        Fingerprint {
            timer: timer.kind().name(),
            unit: timer.kind().unit(),
            ticks_per_second: timer.frequency(),
            resolution: timer.resolution(),
            backend: crate::highway::Backend::detect().name(),
            arch: std::env::consts::ARCH,
        }
    }
}

impl fmt::Display for Fingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "timer={} unit={} freq={:.3}GHz resolution={} backend={} arch={}",
            self.timer,
            self.unit,
            self.ticks_per_second / 1e9,
            self.resolution,
            self.backend,
            self.arch
        )
    }
}
