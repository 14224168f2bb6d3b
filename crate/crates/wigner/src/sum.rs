//! Neumaier-compensated summation for long, mixed-magnitude sums.

#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct NeumaierSum {
    s: f64,
    c: f64,
}

impl NeumaierSum {
    pub fn add(&mut self, x: f64) {
        let t = self.s + x;
        if self.s.abs() >= x.abs() {
            self.c += (self.s - t) + x;
        } else {
            self.c += (x - t) + self.s;
        }
        self.s = t;
    }

    pub fn scale(&mut self, f: f64) {
        self.s *= f;
        self.c *= f;
    }

    pub fn value(&self) -> f64 {
        self.s + self.c
    }
}
