use std::fmt;

/// Outcome of a verification routine: how many checks ran and which failed.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub name: String,
    pub checks: usize,
    pub failures: Vec<String>,
    pub notes: Vec<String>,
    pub dropped: usize,
}

/// Failures beyond this many are counted but not stored.
const MAX_STORED: usize = 20;

impl Report {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            ..Self::default()
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.dropped == 0
    }

    /// Records one check; `msg` is only evaluated on failure.
    pub fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.fail(msg());
        }
    }

    pub fn fail(&mut self, msg: String) {
        if self.failures.len() < MAX_STORED {
            self.failures.push(msg);
        } else {
            self.dropped += 1;
        }
    }

    pub fn note(&mut self, msg: impl Into<String>) {
        self.notes.push(msg.into());
    }

    pub fn merge(&mut self, other: Report) {
        self.checks += other.checks;
        for f in other.failures {
            self.fail(format!("{}: {f}", other.name));
        }
        self.dropped += other.dropped;
        self.notes.extend(other.notes);
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{status} {} ({} checks)", self.name, self.checks)?;
        for note in &self.notes {
            write!(f, "\n  note: {note}")?;
        }
        for fail in &self.failures {
            write!(f, "\n  failure: {fail}")?;
        }
        if self.dropped > 0 {
            write!(f, "\n  ... and {} more failures", self.dropped)?;
        }
        Ok(())
    }
}
