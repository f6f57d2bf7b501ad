use crate::num::{span, Int};

/// Per-variable sorted candidate values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DomainStore<T> {
    domains: Vec<Vec<T>>,
}

impl<T: Int> DomainStore<T> {
    /// Every variable ranges over `[lo, hi]`.
    pub fn window(n: usize, lo: T, hi: T) -> Self {
        let full: Vec<T> = span(lo, hi).collect();
        DomainStore {
            domains: vec![full; n],
        }
    }

    pub fn from_domains(mut domains: Vec<Vec<T>>) -> Self {
        for d in &mut domains {
            d.sort();
            d.dedup();
        }
        DomainStore { domains }
    }

    pub fn len(&self) -> usize {
        self.domains.len()
    }

    pub fn is_empty(&self) -> bool {
        self.domains.is_empty()
    }

    pub fn get(&self, v: usize) -> &[T] {
        &self.domains[v]
    }

    pub fn contains(&self, v: usize, value: T) -> bool {
        self.domains[v].binary_search(&value).is_ok()
    }

    /// True if some domain is empty.
    pub fn wiped_out(&self) -> bool {
        self.domains.iter().any(Vec::is_empty)
    }

    pub fn is_fixed(&self) -> bool {
        self.domains.iter().all(|d| d.len() == 1)
    }

    pub fn assign(&mut self, v: usize, value: T) {
        self.domains[v] = vec![value];
    }

    pub(crate) fn replace(&mut self, v: usize, values: Vec<T>) {
        self.domains[v] = values;
    }

    /// Largest (or smallest) value of each domain; `None` if one is empty.
    pub fn extremes(&self, max: bool) -> Option<Vec<T>> {
        self.domains
            .iter()
            .map(|d| if max { d.last() } else { d.first() }.copied())
            .collect()
    }
}
