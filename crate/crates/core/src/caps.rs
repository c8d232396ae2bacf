/// Budgets for the exhaustive oracles.
///
/// `nodes` bounds the number of search-tree nodes a single backtracking search
/// may expand; `branches` bounds the number of candidates an enumeration driver
/// may try. Exceeding either aborts with [`crate::Error::ScaleExceeded`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    pub nodes: u64,
    pub branches: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            nodes: 50_000_000,
            branches: 1_000_000,
        }
    }
}

/// Node counter shared by the backtracking searches.
#[derive(Debug)]
pub(crate) struct Budget {
    used: u64,
    limit: u64,
    what: &'static str,
}

impl Budget {
    pub(crate) fn new(limit: u64, what: &'static str) -> Self {
        Budget { used: 0, limit, what }
    }

    pub(crate) fn tick(&mut self) -> crate::Result<()> {
        self.used += 1;
        if self.used > self.limit {
            Err(crate::Error::ScaleExceeded(format!(
                "{} expanded more than {} nodes",
                self.what, self.limit
            )))
        } else {
            Ok(())
        }
    }
}
