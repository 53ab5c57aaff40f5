//! Example links and Heegaard diagrams shipped with the binary.

pub struct BundledLink {
    pub name: &'static str,
    pub pd: &'static str,
    pub source: &'static str,
    pub components: usize,
    pub crossings: usize,
    pub alternating: bool,
}

pub struct BundledDiagram {
    pub name: &'static str,
    pub json: &'static str,
    /// Bundled link with the same isotopy type.
    pub link: &'static str,
    pub source: &'static str,
}

macro_rules! pd {
    ($file:literal) => {
        include_str!(concat!("../data/pd/", $file, ".json"))
    };
}

macro_rules! hd {
    ($file:literal) => {
        include_str!(concat!("../data/heegaard/", $file, ".json"))
    };
}

pub const LINKS: &[BundledLink] = &[
    BundledLink {
        name: "unknot",
        pd: pd!("unknot"),
        source: "crossingless diagram",
        components: 1,
        crossings: 0,
        alternating: true,
    },
    BundledLink {
        name: "hopf",
        pd: pd!("hopf"),
        source: "standard positive Hopf diagram",
        components: 2,
        crossings: 2,
        alternating: true,
    },
    BundledLink {
        name: "trefoil",
        pd: pd!("trefoil"),
        source: "standard trefoil diagram",
        components: 1,
        crossings: 3,
        alternating: true,
    },
    BundledLink {
        name: "figure8",
        pd: pd!("figure8"),
        source: "closure of the 3-braid s1 s2^-1 s1 s2^-1",
        components: 1,
        crossings: 4,
        alternating: true,
    },
    BundledLink {
        name: "T2_5",
        pd: pd!("T2_5"),
        source: "closure of the 2-braid s1^5",
        components: 1,
        crossings: 5,
        alternating: true,
    },
    BundledLink {
        name: "T3_4",
        pd: pd!("T3_4"),
        source: "closure of the 3-braid (s1 s2)^4",
        components: 1,
        crossings: 8,
        alternating: false,
    },
    BundledLink {
        name: "T3_5",
        pd: pd!("T3_5"),
        source: "closure of the 3-braid (s1 s2)^5",
        components: 1,
        crossings: 10,
        alternating: false,
    },
    BundledLink {
        name: "9a42",
        pd: pd!("9a42"),
        source: "closure of the 3-braid s2^-2 s1^2 s2^-1 s1 s2^-1 s1^2, first component reversed",
        components: 2,
        crossings: 9,
        alternating: true,
    },
    BundledLink {
        name: "L10n36",
        pd: pd!("L10n36"),
        source: "closure of the 4-braid s3^-1 s2^-3 s3^-1 s1 s2^2 s1^2: an unknot and a square knot, lk 0, Jones polynomial not that of a split link",
        components: 2,
        crossings: 10,
        alternating: false,
    },
];

pub const DIAGRAMS: &[BundledDiagram] = &[
    BundledDiagram {
        name: "unknot",
        json: hd!("unknot"),
        link: "unknot",
        source: "torus, one intersection point",
    },
    BundledDiagram {
        name: "trefoil",
        json: hd!("trefoil"),
        link: "trefoil",
        source: "torus, beta pushed across alpha by a finger move, basepoints in the two bigons",
    },
    BundledDiagram {
        name: "unknot_finger",
        json: hd!("unknot_finger"),
        link: "unknot",
        source: "the trefoil curves with both basepoints in the large region",
    },
    BundledDiagram {
        name: "hopf",
        json: hd!("hopf"),
        link: "hopf",
        source: "sphere, a circle and a flat ellipse meeting in four points",
    },
];

pub fn link(name: &str) -> Option<&'static BundledLink> {
    LINKS.iter().find(|l| l.name.eq_ignore_ascii_case(name))
}

pub fn diagram(name: &str) -> Option<&'static BundledDiagram> {
    DIAGRAMS.iter().find(|d| d.name.eq_ignore_ascii_case(name))
}

/// `examples/9a42.json` -> `9a42`.
pub fn stem(path: &str) -> &str {
    let base = path.rsplit(['/', '\\']).next().unwrap_or(path);
    base.strip_suffix(".json").unwrap_or(base)
}
