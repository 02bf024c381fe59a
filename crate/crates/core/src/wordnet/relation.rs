/// Pointer types of the WordNet database, named by their role.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(u8)]
pub enum Relation {
    Hypernym,
    InstanceHypernym,
    Hyponym,
    InstanceHyponym,
    MemberHolonym,
    SubstanceHolonym,
    PartHolonym,
    MemberMeronym,
    SubstanceMeronym,
    PartMeronym,
    Attribute,
    Derivation,
    DomainTopic,
    DomainRegion,
    DomainUsage,
    TopicMember,
    RegionMember,
    UsageMember,
    Antonym,
    SimilarTo,
    Participle,
    Pertainym,
    AlsoSee,
    VerbGroup,
    Entailment,
    Cause,
}

impl Relation {
    pub const ALL: [Relation; 26] = [
        Relation::Hypernym,
        Relation::InstanceHypernym,
        Relation::Hyponym,
        Relation::InstanceHyponym,
        Relation::MemberHolonym,
        Relation::SubstanceHolonym,
        Relation::PartHolonym,
        Relation::MemberMeronym,
        Relation::SubstanceMeronym,
        Relation::PartMeronym,
        Relation::Attribute,
        Relation::Derivation,
        Relation::DomainTopic,
        Relation::DomainRegion,
        Relation::DomainUsage,
        Relation::TopicMember,
        Relation::RegionMember,
        Relation::UsageMember,
        Relation::Antonym,
        Relation::SimilarTo,
        Relation::Participle,
        Relation::Pertainym,
        Relation::AlsoSee,
        Relation::VerbGroup,
        Relation::Entailment,
        Relation::Cause,
    ];

    pub fn from_symbol(symbol: &str) -> Option<Relation> {
        use Relation::*;
        Some(match symbol {
            "@" => Hypernym,
            "@i" => InstanceHypernym,
            "~" => Hyponym,
            "~i" => InstanceHyponym,
            "#m" => MemberHolonym,
            "#s" => SubstanceHolonym,
            "#p" => PartHolonym,
            "%m" => MemberMeronym,
            "%s" => SubstanceMeronym,
            "%p" => PartMeronym,
            "=" => Attribute,
            "+" => Derivation,
            ";c" => DomainTopic,
            ";r" => DomainRegion,
            ";u" => DomainUsage,
            "-c" => TopicMember,
            "-r" => RegionMember,
            "-u" => UsageMember,
            "!" => Antonym,
            "&" => SimilarTo,
            "<" => Participle,
            // pertainym for adjectives, "derived from adjective" for adverbs
            "\\" => Pertainym,
            "^" => AlsoSee,
            "$" => VerbGroup,
            "*" => Entailment,
            ">" => Cause,
            _ => return None,
        })
    }

    pub fn symbol(self) -> &'static str {
        use Relation::*;
        match self {
            Hypernym => "@",
            InstanceHypernym => "@i",
            Hyponym => "~",
            InstanceHyponym => "~i",
            MemberHolonym => "#m",
            SubstanceHolonym => "#s",
            PartHolonym => "#p",
            MemberMeronym => "%m",
            SubstanceMeronym => "%s",
            PartMeronym => "%p",
            Attribute => "=",
            Derivation => "+",
            DomainTopic => ";c",
            DomainRegion => ";r",
            DomainUsage => ";u",
            TopicMember => "-c",
            RegionMember => "-r",
            UsageMember => "-u",
            Antonym => "!",
            SimilarTo => "&",
            Participle => "<",
            Pertainym => "\\",
            AlsoSee => "^",
            VerbGroup => "$",
            Entailment => "*",
            Cause => ">",
        }
    }

    /// Hypernym-like edges that define the taxonomy.
    pub fn is_hypernym(self) -> bool {
        matches!(self, Relation::Hypernym | Relation::InstanceHypernym)
    }

    pub(crate) fn bit(self) -> u32 {
        1 << (self as u8)
    }
}

const VIRTUAL_ROOT_BIT: u32 = 1 << 31;

/// A filter over edge kinds for path queries. Edges are always walked in
/// both directions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EdgeSet(u32);

impl EdgeSet {
    /// Hypernym and hyponym edges (instance ones included) plus the links
    /// from each taxonomy root up to the per-POS virtual root.
    pub fn taxonomy() -> EdgeSet {
        EdgeSet::of(&[
            Relation::Hypernym,
            Relation::InstanceHypernym,
            Relation::Hyponym,
            Relation::InstanceHyponym,
        ])
        .with_virtual_root()
    }

    /// Every WordNet relation. Virtual root links are excluded.
    pub fn all_relations() -> EdgeSet {
        EdgeSet::of(&Relation::ALL)
    }

    pub fn of(relations: &[Relation]) -> EdgeSet {
        EdgeSet(relations.iter().fold(0, |mask, r| mask | r.bit()))
    }

    pub fn with_virtual_root(self) -> EdgeSet {
        EdgeSet(self.0 | VIRTUAL_ROOT_BIT)
    }

    pub(crate) fn admits(self, kind: EdgeKind) -> bool {
        self.0 & kind.0 != 0
    }
}

/// Label of a stored adjacency entry: one relation bit or the root link bit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) struct EdgeKind(u32);

impl EdgeKind {
    pub(crate) const VIRTUAL_ROOT: EdgeKind = EdgeKind(VIRTUAL_ROOT_BIT);

    pub(crate) fn relation(r: Relation) -> EdgeKind {
        EdgeKind(r.bit())
    }
}
