#include "renyiwalk/group.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <stdexcept>

namespace renyiwalk {

namespace {

void reduce_word(std::vector<std::int32_t>& letters) {
    std::size_t top = 0;
    for (std::int32_t x : letters) {
        if (x == 0) throw std::invalid_argument("free word letter must be non-zero");
        if (top > 0 && letters[top - 1] == -x)
            --top;
        else
            letters[top++] = x;
    }
    letters.resize(top);
}

int mod_positive(long v, int q) {
    int r = static_cast<int>(v % q);
    return r < 0 ? r + q : r;
}

}  // namespace

GroupElement GroupElement::free_word(std::vector<std::int32_t> letters) {
    reduce_word(letters);
    return GroupElement(FreeWord{std::move(letters)});
}

GroupElement GroupElement::lamplighter(
    std::vector<std::pair<std::int64_t, std::int32_t>> lamps,
    std::int64_t pos, int lamp_order) {
    if (lamp_order < 2) throw std::invalid_argument("lamp order must be >= 2");
    std::sort(lamps.begin(), lamps.end());
    std::vector<std::pair<std::int64_t, std::int32_t>> out;
    out.reserve(lamps.size());
    for (const auto& [site, raw] : lamps) {
        const int v = mod_positive(raw, lamp_order);
        if (!out.empty() && out.back().first == site) {
            const int merged = mod_positive(out.back().second + v, lamp_order);
            if (merged == 0)
                out.pop_back();
            else
                out.back().second = merged;
        } else if (v != 0) {
            out.emplace_back(site, v);
        }
    }
    return GroupElement(LampConfig{std::move(out), pos});
}

GroupElement GroupElement::int_vector(std::vector<std::int64_t> coords) {
    return GroupElement(IntVector{std::move(coords)});
}

GroupElement GroupElement::table_index(std::int32_t index) {
    return GroupElement(TableIndex{index});
}

std::uint64_t GroupElement::stable_hash() const {
    constexpr std::uint64_t kOffset = 1469598103934665603ull;
    constexpr std::uint64_t kPrime = 1099511628211ull;
    std::uint64_t h = kOffset;
    auto mix = [&h](std::uint64_t x) {
        for (int i = 0; i < 8; ++i) {
            h ^= (x >> (8 * i)) & 0xff;
            h *= kPrime;
        }
    };
    mix(static_cast<std::uint64_t>(v_.index()));
    if (const auto* w = std::get_if<FreeWord>(&v_)) {
        for (std::int32_t x : w->letters) mix(static_cast<std::uint64_t>(static_cast<std::int64_t>(x)));
    } else if (const auto* l = std::get_if<LampConfig>(&v_)) {
        mix(static_cast<std::uint64_t>(l->pos));
        for (const auto& [site, v] : l->lamps) {
            mix(static_cast<std::uint64_t>(site));
            mix(static_cast<std::uint64_t>(v));
        }
    } else if (const auto* z = std::get_if<IntVector>(&v_)) {
        for (std::int64_t c : z->coords) mix(static_cast<std::uint64_t>(c));
    } else {
        mix(static_cast<std::uint64_t>(std::get<TableIndex>(v_).index));
    }
    return h;
}

std::strong_ordering GroupElement::operator<=>(const GroupElement& o) const {
    if (auto c = v_.index() <=> o.v_.index(); c != 0) return c;
    if (const auto* w = std::get_if<FreeWord>(&v_)) {
        const auto& ow = std::get<FreeWord>(o.v_);
        if (auto c = w->letters.size() <=> ow.letters.size(); c != 0) return c;
        return w->letters <=> ow.letters;  // shortlex
    }
    if (const auto* l = std::get_if<LampConfig>(&v_)) {
        const auto& ol = std::get<LampConfig>(o.v_);
        if (auto c = l->pos <=> ol.pos; c != 0) return c;
        return l->lamps <=> ol.lamps;
    }
    if (const auto* z = std::get_if<IntVector>(&v_))
        return z->coords <=> std::get<IntVector>(o.v_).coords;
    return std::get<TableIndex>(v_).index <=> std::get<TableIndex>(o.v_).index;
}

// ---------------------------------------------------------------------------

GroupSpec GroupSpec::free_group(int d) {
    if (d < 1) throw std::invalid_argument("free group rank must be >= 1");
    if (d > 26) throw std::invalid_argument("free group rank limited to 26 (a..z labels)");
    GroupSpec s;
    s.kind_ = GroupKind::Free;
    s.rank_ = d;
    for (int i = 0; i < d; ++i) s.labels_.push_back(std::string(1, static_cast<char>('a' + i)));
    return s;
}

GroupSpec GroupSpec::lamplighter(int lamp_order) {
    if (lamp_order < 2) throw std::invalid_argument("lamp order must be >= 2");
    GroupSpec s;
    s.kind_ = GroupKind::Lamplighter;
    s.lamp_order_ = lamp_order;
    return s;
}

GroupSpec GroupSpec::z_lattice(int d, int z_coordinate) {
    if (d < 1) throw std::invalid_argument("lattice dimension must be >= 1");
    if (z_coordinate < 0 || z_coordinate >= d)
        throw std::invalid_argument("z coordinate out of range");
    GroupSpec s;
    s.kind_ = GroupKind::ZLattice;
    s.rank_ = d;
    s.z_coordinate_ = z_coordinate;
    return s;
}

GroupSpec GroupSpec::finite_table(std::vector<std::vector<int>> table) {
    const int m = static_cast<int>(table.size());
    if (m == 0) throw std::invalid_argument("empty multiplication table");
    for (const auto& row : table) {
        if (static_cast<int>(row.size()) != m)
            throw std::invalid_argument("multiplication table must be square");
        for (int v : row)
            if (v < 0 || v >= m) throw std::invalid_argument("table entry out of range");
    }
    int identity = -1;
    for (int e = 0; e < m; ++e) {
        bool ok = true;
        for (int x = 0; x < m && ok; ++x)
            ok = table[e][x] == x && table[x][e] == x;
        if (ok) {
            identity = e;
            break;
        }
    }
    if (identity < 0) throw std::invalid_argument("table has no identity element");
    for (int x = 0; x < m; ++x) {
        bool has_inverse = false;
        for (int y = 0; y < m; ++y)
            if (table[x][y] == identity && table[y][x] == identity) has_inverse = true;
        if (!has_inverse) throw std::invalid_argument("table element has no inverse");
    }
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            for (int c = 0; c < m; ++c)
                if (table[table[a][b]][c] != table[a][table[b][c]])
                    throw std::invalid_argument("table is not associative");
    GroupSpec s;
    s.kind_ = GroupKind::FiniteTable;
    s.rank_ = m;
    s.table_identity_ = identity;
    s.table_ = std::move(table);
    return s;
}

// ---------------------------------------------------------------------------

Group::Group(GroupSpec spec) : spec_(std::move(spec)) {}

GroupElement Group::identity() const {
    switch (spec_.kind()) {
        case GroupKind::Free:
            return GroupElement::free_word({});
        case GroupKind::Lamplighter:
            return GroupElement::lamplighter({}, 0, spec_.lamp_order());
        case GroupKind::ZLattice:
            return GroupElement::int_vector(std::vector<std::int64_t>(spec_.rank(), 0));
        case GroupKind::FiniteTable:
            return GroupElement::table_index(spec_.table_identity());
    }
    throw std::logic_error("unreachable");
}

void Group::validate(const GroupElement& a) const {
    switch (spec_.kind()) {
        case GroupKind::Free: {
            const auto* w = std::get_if<GroupElement::FreeWord>(&a.value());
            if (!w) throw std::invalid_argument("element does not belong to a free group");
            for (std::int32_t x : w->letters)
                if (x == 0 || std::abs(x) > spec_.rank())
                    throw std::invalid_argument("free word letter out of range");
            return;
        }
        case GroupKind::Lamplighter: {
            const auto* l = std::get_if<GroupElement::LampConfig>(&a.value());
            if (!l) throw std::invalid_argument("element does not belong to a lamplighter group");
            for (const auto& [site, v] : l->lamps) {
                (void)site;
                if (v <= 0 || v >= spec_.lamp_order())
                    throw std::invalid_argument("lamp value out of range");
            }
            return;
        }
        case GroupKind::ZLattice: {
            const auto* z = std::get_if<GroupElement::IntVector>(&a.value());
            if (!z) throw std::invalid_argument("element does not belong to Z^d");
            if (static_cast<int>(z->coords.size()) != spec_.rank())
                throw std::invalid_argument("vector dimension mismatch");
            return;
        }
        case GroupKind::FiniteTable: {
            const auto* t = std::get_if<GroupElement::TableIndex>(&a.value());
            if (!t) throw std::invalid_argument("element does not belong to a table group");
            if (t->index < 0 || t->index >= spec_.rank())
                throw std::invalid_argument("table index out of range");
            return;
        }
    }
}

GroupElement Group::multiply(const GroupElement& a, const GroupElement& b) const {
    validate(a);
    validate(b);
    switch (spec_.kind()) {
        case GroupKind::Free: {
            const auto& wa = std::get<GroupElement::FreeWord>(a.value()).letters;
            const auto& wb = std::get<GroupElement::FreeWord>(b.value()).letters;
            std::vector<std::int32_t> out = wa;
            for (std::int32_t x : wb) {
                if (!out.empty() && out.back() == -x)
                    out.pop_back();
                else
                    out.push_back(x);
            }
            return GroupElement::free_word(std::move(out));
        }
        case GroupKind::Lamplighter: {
            const auto& la = std::get<GroupElement::LampConfig>(a.value());
            const auto& lb = std::get<GroupElement::LampConfig>(b.value());
            // (f, z) * (f', z') = (f + shift_z f', z + z')
            std::vector<std::pair<std::int64_t, std::int32_t>> lamps = la.lamps;
            lamps.reserve(la.lamps.size() + lb.lamps.size());
            for (const auto& [site, v] : lb.lamps) lamps.emplace_back(site + la.pos, v);
            return GroupElement::lamplighter(std::move(lamps), la.pos + lb.pos,
                                             spec_.lamp_order());
        }
        case GroupKind::ZLattice: {
            const auto& za = std::get<GroupElement::IntVector>(a.value()).coords;
            const auto& zb = std::get<GroupElement::IntVector>(b.value()).coords;
            std::vector<std::int64_t> out(za.size());
            for (std::size_t i = 0; i < za.size(); ++i) out[i] = za[i] + zb[i];
            return GroupElement::int_vector(std::move(out));
        }
        case GroupKind::FiniteTable: {
            const int ia = std::get<GroupElement::TableIndex>(a.value()).index;
            const int ib = std::get<GroupElement::TableIndex>(b.value()).index;
            return GroupElement::table_index(spec_.table()[ia][ib]);
        }
    }
    throw std::logic_error("unreachable");
}

GroupElement Group::inverse(const GroupElement& a) const {
    validate(a);
    switch (spec_.kind()) {
        case GroupKind::Free: {
            const auto& w = std::get<GroupElement::FreeWord>(a.value()).letters;
            std::vector<std::int32_t> out(w.rbegin(), w.rend());
            for (auto& x : out) x = -x;
            return GroupElement::free_word(std::move(out));
        }
        case GroupKind::Lamplighter: {
            const auto& l = std::get<GroupElement::LampConfig>(a.value());
            // (f, z)^{-1} = (-shift_{-z} f, -z)
            std::vector<std::pair<std::int64_t, std::int32_t>> lamps;
            lamps.reserve(l.lamps.size());
            for (const auto& [site, v] : l.lamps)
                lamps.emplace_back(site - l.pos, spec_.lamp_order() - v);
            return GroupElement::lamplighter(std::move(lamps), -l.pos, spec_.lamp_order());
        }
        case GroupKind::ZLattice: {
            auto out = std::get<GroupElement::IntVector>(a.value()).coords;
            for (auto& c : out) c = -c;
            return GroupElement::int_vector(std::move(out));
        }
        case GroupKind::FiniteTable: {
            const int ia = std::get<GroupElement::TableIndex>(a.value()).index;
            const auto& tbl = spec_.table();
            for (int j = 0; j < spec_.rank(); ++j)
                if (tbl[ia][j] == spec_.table_identity()) return GroupElement::table_index(j);
            throw std::logic_error("validated table lost an inverse");
        }
    }
    throw std::logic_error("unreachable");
}

std::int64_t Group::projection(const GroupElement& a) const {
    validate(a);
    if (spec_.kind() == GroupKind::Lamplighter)
        return std::get<GroupElement::LampConfig>(a.value()).pos;
    if (spec_.kind() == GroupKind::ZLattice)
        return std::get<GroupElement::IntVector>(a.value()).coords[spec_.z_coordinate()];
    throw std::invalid_argument("group has no declared Z-quotient");
}

int Group::word_length(const GroupElement& a) const {
    validate(a);
    if (spec_.kind() != GroupKind::Free)
        throw std::invalid_argument("word length is only defined for free groups");
    return static_cast<int>(std::get<GroupElement::FreeWord>(a.value()).letters.size());
}

std::string Group::format(const GroupElement& a) const {
    validate(a);
    switch (spec_.kind()) {
        case GroupKind::Free: {
            const auto& w = std::get<GroupElement::FreeWord>(a.value()).letters;
            if (w.empty()) return "e";
            std::string out;
            for (std::size_t i = 0; i < w.size(); ++i) {
                if (i) out += ' ';
                const int idx = std::abs(w[i]) - 1;
                char c = static_cast<char>('a' + idx);
                if (w[i] < 0) c = static_cast<char>(c - 'a' + 'A');
                out += c;
            }
            return out;
        }
        case GroupKind::Lamplighter: {
            const auto& l = std::get<GroupElement::LampConfig>(a.value());
            std::ostringstream out;
            out << '{';
            for (std::size_t i = 0; i < l.lamps.size(); ++i) {
                if (i) out << ',';
                out << l.lamps[i].first << ':' << l.lamps[i].second;
            }
            out << "};" << l.pos;
            return out.str();
        }
        case GroupKind::ZLattice: {
            const auto& z = std::get<GroupElement::IntVector>(a.value()).coords;
            std::ostringstream out;
            for (std::size_t i = 0; i < z.size(); ++i) {
                if (i) out << ',';
                out << z[i];
            }
            return out.str();
        }
        case GroupKind::FiniteTable:
            return std::to_string(std::get<GroupElement::TableIndex>(a.value()).index);
    }
    throw std::logic_error("unreachable");
}

namespace {

std::int64_t parse_int(std::string_view s) {
    std::int64_t v = 0;
    const auto* first = s.data();
    const auto* last = s.data() + s.size();
    auto [p, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || p != last)
        throw std::invalid_argument("bad integer: '" + std::string(s) + "'");
    return v;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

}  // namespace

GroupElement Group::parse(std::string_view text) const {
    text = trim(text);
    switch (spec_.kind()) {
        case GroupKind::Free: {
            if (text.empty() || text == "e") return identity();
            std::vector<std::int32_t> letters;
            std::size_t i = 0;
            while (i < text.size()) {
                if (text[i] == ' ') {
                    ++i;
                    continue;
                }
                const char c = text[i];
                std::int32_t letter;
                if (c >= 'a' && c <= 'z')
                    letter = c - 'a' + 1;
                else if (c >= 'A' && c <= 'Z')
                    letter = -(c - 'A' + 1);
                else
                    throw std::invalid_argument("bad generator character in free word");
                if (std::abs(letter) > spec_.rank())
                    throw std::invalid_argument("generator out of range for this group");
                letters.push_back(letter);
                ++i;
            }
            return GroupElement::free_word(std::move(letters));
        }
        case GroupKind::Lamplighter: {
            const auto semi = text.rfind(';');
            if (text.empty() || text.front() != '{' || semi == std::string_view::npos)
                throw std::invalid_argument("lamplighter element must look like '{p:v,...};z'");
            const auto close = text.find('}');
            if (close == std::string_view::npos || close > semi)
                throw std::invalid_argument("unbalanced braces in lamplighter element");
            std::vector<std::pair<std::int64_t, std::int32_t>> lamps;
            std::string_view body = text.substr(1, close - 1);
            while (!body.empty()) {
                const auto comma = body.find(',');
                std::string_view item =
                    comma == std::string_view::npos ? body : body.substr(0, comma);
                body = comma == std::string_view::npos ? std::string_view{}
                                                       : body.substr(comma + 1);
                item = trim(item);
                if (item.empty()) continue;
                const auto colon = item.find(':');
                if (colon == std::string_view::npos)
                    throw std::invalid_argument("expected 'position:value' lamp entry");
                lamps.emplace_back(
                    parse_int(trim(item.substr(0, colon))),
                    static_cast<std::int32_t>(parse_int(trim(item.substr(colon + 1)))));
            }
            const std::int64_t pos = parse_int(trim(text.substr(semi + 1)));
            return GroupElement::lamplighter(std::move(lamps), pos, spec_.lamp_order());
        }
        case GroupKind::ZLattice: {
            std::vector<std::int64_t> coords;
            std::string_view rest = text;
            while (true) {
                const auto comma = rest.find(',');
                coords.push_back(parse_int(trim(
                    comma == std::string_view::npos ? rest : rest.substr(0, comma))));
                if (comma == std::string_view::npos) break;
                rest = rest.substr(comma + 1);
            }
            if (static_cast<int>(coords.size()) != spec_.rank())
                throw std::invalid_argument("vector dimension mismatch");
            return GroupElement::int_vector(std::move(coords));
        }
        case GroupKind::FiniteTable: {
            const auto idx = parse_int(text);
            auto e = GroupElement::table_index(static_cast<std::int32_t>(idx));
            validate(e);
            return e;
        }
    }
    throw std::logic_error("unreachable");
}

}  // namespace renyiwalk
