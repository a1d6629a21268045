#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace renyiwalk {

enum class GroupKind { Free, Lamplighter, ZLattice, FiniteTable };

/**
 * Normalized element of a concrete group. The payload is one of:
 *  - FreeWord: reduced word over d free generators; letter +i / -i is the
 *    i-th generator / its inverse (i in 1..d). No adjacent x, -x pair.
 *  - LampConfig: wreath normal form (f, z) with f a finite set of non-zero
 *    lamps (position -> value in 1..q-1, sorted by position) and z the
 *    lamplighter position.
 *  - IntVector: element of Z^d.
 *  - TableIndex: index into a finite multiplication table.
 *
 * Elements are immutable once constructed; equality of normal forms is
 * equality in the group.
 */
class GroupElement {
public:
    struct FreeWord {
        std::vector<std::int32_t> letters;
        auto operator<=>(const FreeWord&) const = default;
    };
    struct LampConfig {
        std::vector<std::pair<std::int64_t, std::int32_t>> lamps;
        std::int64_t pos = 0;
        auto operator<=>(const LampConfig&) const = default;
    };
    struct IntVector {
        std::vector<std::int64_t> coords;
        auto operator<=>(const IntVector&) const = default;
    };
    struct TableIndex {
        std::int32_t index = 0;
        auto operator<=>(const TableIndex&) const = default;
    };
    using Value = std::variant<FreeWord, LampConfig, IntVector, TableIndex>;

    /// Builds a reduced word; cancels adjacent inverse pairs eagerly.
    static GroupElement free_word(std::vector<std::int32_t> letters);
    /// Normalizes lamp values mod q, drops identity lamps, sorts by position.
    static GroupElement lamplighter(
        std::vector<std::pair<std::int64_t, std::int32_t>> lamps,
        std::int64_t pos, int lamp_order);
    static GroupElement int_vector(std::vector<std::int64_t> coords);
    static GroupElement table_index(std::int32_t index);

    const Value& value() const { return v_; }

    /// Stable 64-bit hash of the normal form (FNV-1a over canonical bytes);
    /// identical across runs and platforms with 64-bit long.
    std::uint64_t stable_hash() const;

    bool operator==(const GroupElement& o) const { return v_ == o.v_; }
    /// Total order: variant kind, then shortlex for words, (pos, lamps) for
    /// lamplighter, lexicographic for vectors. Used for canonical sorting.
    std::strong_ordering operator<=>(const GroupElement& o) const;

private:
    explicit GroupElement(Value v) : v_(std::move(v)) {}
    Value v_;
};

/**
 * Description of a concrete group: which kind plus its parameters.
 * FiniteTable specs are validated on construction (closure, identity,
 * inverses, associativity).
 */
class GroupSpec {
public:
    static GroupSpec free_group(int d);
    static GroupSpec lamplighter(int lamp_order);
    static GroupSpec z_lattice(int d, int z_coordinate = 0);
    static GroupSpec finite_table(std::vector<std::vector<int>> table);

    GroupKind kind() const { return kind_; }
    int rank() const { return rank_; }              // free d / zd dimension
    int lamp_order() const { return lamp_order_; }  // lamplighter q
    int z_coordinate() const { return z_coordinate_; }
    const std::vector<std::vector<int>>& table() const { return table_; }
    int table_identity() const { return table_identity_; }
    const std::vector<std::string>& generator_labels() const { return labels_; }

    bool has_z_quotient() const {
        return kind_ == GroupKind::Lamplighter || kind_ == GroupKind::ZLattice;
    }
    bool operator==(const GroupSpec&) const = default;

private:
    GroupSpec() = default;
    GroupKind kind_ = GroupKind::Free;
    int rank_ = 0;
    int lamp_order_ = 0;
    int z_coordinate_ = 0;
    int table_identity_ = 0;
    std::vector<std::vector<int>> table_;
    std::vector<std::string> labels_;
};

/**
 * A GroupSpec together with the operations the convolution engine needs.
 * All operations validate that their arguments belong to this group.
 */
class Group {
public:
    explicit Group(GroupSpec spec);

    const GroupSpec& spec() const { return spec_; }
    GroupElement identity() const;

    /// Normalized product; throws std::invalid_argument on mismatched specs.
    GroupElement multiply(const GroupElement& a, const GroupElement& b) const;
    GroupElement inverse(const GroupElement& a) const;

    /// The declared Z-quotient: lamplighter position, or the chosen Z^d
    /// coordinate. Not offered for free groups or finite tables.
    std::int64_t projection(const GroupElement& a) const;

    /// Reduced word length; free groups only.
    int word_length(const GroupElement& a) const;

    /// Element <-> string: free words "a b A" (capital = inverse), identity
    /// "e"; lamplighter "{pos:lamp,...};z"; integer vectors "1,-2,3";
    /// table elements by index.
    std::string format(const GroupElement& a) const;
    GroupElement parse(std::string_view text) const;

    /// Checks the element payload matches this spec (kind, index ranges).
    void validate(const GroupElement& a) const;

    bool operator==(const Group& o) const { return spec_ == o.spec_; }

private:
    GroupSpec spec_;
};

}  // namespace renyiwalk
