use std::fmt;
use std::sync::Arc;

/// A named affine chart: an ordered list of coordinate names. Cheap to clone;
/// equality is structural (name + coordinates).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Chart(Arc<ChartInner>);

#[derive(PartialEq, Eq, Hash)]
struct ChartInner {
    name: String,
    coordinates: Vec<String>,
}

impl Chart {
    /// Panics on duplicate coordinate names (program error, not user input).
    pub fn new(name: &str, coordinates: &[&str]) -> Chart {
        let coords: Vec<String> = coordinates.iter().map(|s| s.to_string()).collect();
        let mut sorted = coords.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), coords.len(), "duplicate coordinate in chart {name}");
        Chart(Arc::new(ChartInner { name: name.to_string(), coordinates: coords }))
    }

    pub fn from_owned(name: String, coordinates: Vec<String>) -> Chart {
        let refs: Vec<&str> = coordinates.iter().map(|s| s.as_str()).collect();
        Chart::new(&name, &refs)
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn dim(&self) -> usize {
        self.0.coordinates.len()
    }

    pub fn coordinates(&self) -> &[String] {
        &self.0.coordinates
    }

    pub fn coordinate(&self, i: usize) -> &str {
        &self.0.coordinates[i]
    }

    pub fn index_of(&self, coord: &str) -> Option<usize> {
        self.0.coordinates.iter().position(|c| c == coord)
    }
}

impl fmt::Debug for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Chart({}: {})", self.0.name, self.0.coordinates.join(","))
    }
}
