#include "coarsesep/word.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <random>
#include <sstream>

#include "coarsesep/error.hpp"

namespace coarsesep {

namespace {

std::atomic<std::uint32_t> next_ambient_id{1};

}  // namespace

GraphProduct::GraphProduct(LabeledGraph g) : graph_(std::move(g)), id_(next_ambient_id.fetch_add(1)) {
    if (!graph_.all_concrete()) {
        throw Error("word arithmetic needs every vertex group given by a multiplication table (found an abstract label)");
    }
    gen_offset_.resize(static_cast<std::size_t>(graph_.size()));
    for (int v = 0; v < graph_.size(); ++v) {
        gen_offset_[static_cast<std::size_t>(v)] = static_cast<int>(generators_.size());
        for (int a = 1; a < order(v); ++a) {
            generators_.push_back(Syllable{static_cast<std::uint8_t>(v), static_cast<std::uint8_t>(a)});
        }
    }
}

void GraphProduct::check(Syllable s) const {
    if (s.vertex >= graph_.size()) throw Error("syllable references vertex " + std::to_string(s.vertex) + " outside the graph");
    if (s.elem >= order(s.vertex)) {
        throw Error("syllable v" + std::to_string(s.vertex) + ":" + std::to_string(s.elem) + " is not an element of its vertex group");
    }
}

void GraphProduct::check(const Word& w) const {
    if (w.ambient != 0 && w.ambient != id_) throw Error("word belongs to a different graph product");
    for (Syllable s : w.syllables) check(s);
}

Word GraphProduct::stamp(std::vector<Syllable> syl) const {
    Word w;
    w.syllables = std::move(syl);
    w.ambient = id_;
    return w;
}

void GraphProduct::insert(std::vector<Syllable>& stack, Syllable s) const {
    if (s.elem == 0) return;
    for (std::size_t i = stack.size(); i-- > 0;) {
        Syllable& t = stack[i];
        if (t.vertex == s.vertex) {
            const int c = graph_.label(s.vertex).mul(t.elem, s.elem);
            if (c == 0) {
                stack.erase(stack.begin() + static_cast<std::ptrdiff_t>(i));
            } else {
                t.elem = static_cast<std::uint8_t>(c);
            }
            return;
        }
        if (!commute(t.vertex, s.vertex)) break;
    }
    stack.push_back(s);
}

void GraphProduct::canonicalize(std::vector<Syllable>& syl) const {
    const std::size_t n = syl.size();
    if (n < 2) return;
    // Cartier–Foata level: one more than the deepest earlier syllable it
    // cannot be shuffled past.
    std::vector<std::pair<std::uint32_t, Syllable>> keyed(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::uint32_t level = 0;
        for (std::size_t j = 0; j < i; ++j) {
            if (syl[j].vertex == syl[i].vertex || !commute(syl[j].vertex, syl[i].vertex)) {
                level = std::max(level, keyed[j].first + 1);
            }
        }
        keyed[i] = {level, syl[i]};
    }
    std::stable_sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return a.second.vertex < b.second.vertex;
    });
    for (std::size_t i = 0; i < n; ++i) syl[i] = keyed[i].second;
}

Word GraphProduct::reduce(std::span<const Syllable> raw) const {
    std::vector<Syllable> stack;
    stack.reserve(raw.size());
    for (Syllable s : raw) {
        check(s);
        insert(stack, s);
    }
    canonicalize(stack);
    return stamp(std::move(stack));
}

Word GraphProduct::identity() const { return stamp({}); }

Word GraphProduct::multiply(const Word& x, const Word& y) const {
    check(x);
    check(y);
    std::vector<Syllable> stack = x.syllables;
    for (Syllable s : y.syllables) insert(stack, s);
    canonicalize(stack);
    return stamp(std::move(stack));
}

Word GraphProduct::inverse(const Word& x) const {
    check(x);
    std::vector<Syllable> out;
    out.reserve(x.size());
    for (auto it = x.syllables.rbegin(); it != x.syllables.rend(); ++it) {
        out.push_back(Syllable{it->vertex, static_cast<std::uint8_t>(graph_.label(it->vertex).inv(it->elem))});
    }
    // The reverse of a reduced word is reduced; only the order needs fixing.
    if (x.ambient != id_) {
        std::vector<Syllable> stack;
        for (Syllable s : out) insert(stack, s);
        out = std::move(stack);
    }
    canonicalize(out);
    return stamp(std::move(out));
}

bool GraphProduct::equals(const Word& x, const Word& y) const {
    if (x.ambient != id_ || y.ambient != id_) {
        if ((x.ambient != 0 && x.ambient != id_) || (y.ambient != 0 && y.ambient != id_)) {
            throw Error("words belong to a different graph product");
        }
        return reduce(x.syllables).syllables == reduce(y.syllables).syllables;
    }
    return x.syllables == y.syllables;
}

Word GraphProduct::right_multiply(const Word& x, Syllable s) const {
    check(s);
    std::vector<Syllable> stack = x.syllables;
    insert(stack, s);
    canonicalize(stack);
    return stamp(std::move(stack));
}

Word GraphProduct::left_multiply(Syllable s, const Word& x) const {
    check(s);
    std::vector<Syllable> stack{s};
    stack.reserve(x.size() + 1);
    if (s.elem == 0) stack.clear();
    for (Syllable t : x.syllables) insert(stack, t);
    canonicalize(stack);
    return stamp(std::move(stack));
}

bool GraphProduct::is_normal_form(const Word& w) const {
    if (w.ambient != id_) return false;
    const auto& syl = w.syllables;
    for (Syllable s : syl) {
        if (s.vertex >= graph_.size() || s.elem == 0 || s.elem >= order(s.vertex)) return false;
    }
    for (std::size_t i = 0; i < syl.size(); ++i) {
        for (std::size_t j = i + 1; j < syl.size(); ++j) {
            if (syl[j].vertex != syl[i].vertex) continue;
            bool blocked = false;
            for (std::size_t k = i + 1; k < j; ++k) {
                if (!commute(syl[k].vertex, syl[i].vertex)) {
                    blocked = true;
                    break;
                }
            }
            if (!blocked) return false;
            break;
        }
    }
    std::vector<Syllable> canon = syl;
    canonicalize(canon);
    return canon == syl;
}

Word random_word(const GraphProduct& gp, std::uint64_t seed, std::size_t n) {
    std::mt19937_64 rng(seed);
    const int nv = gp.graph().size();
    std::vector<Syllable> raw;
    raw.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::uniform_int_distribution<int> pick_v(0, nv - 1);
        const int v = pick_v(rng);
        std::uniform_int_distribution<int> pick_a(1, gp.order(v) - 1);
        raw.push_back(Syllable{static_cast<std::uint8_t>(v), static_cast<std::uint8_t>(pick_a(rng))});
    }
    return gp.reduce(raw);
}

std::vector<Syllable> parse_word(const std::string& text) {
    std::istringstream is(text);
    std::vector<Syllable> out;
    std::string tok;
    while (is >> tok) {
        if (tok == "e" || tok == "1") continue;
        const auto colon = tok.find(':');
        if (tok.size() < 4 || tok[0] != 'v' || colon == std::string::npos) {
            throw Error("malformed syllable '" + tok + "' (expected v<vertex>:<element>)");
        }
        int v = 0;
        int a = 0;
        try {
            std::size_t used = 0;
            v = std::stoi(tok.substr(1, colon - 1), &used);
            if (used != colon - 1) throw Error("");
            a = std::stoi(tok.substr(colon + 1), &used);
            if (used != tok.size() - colon - 1) throw Error("");
        } catch (const std::exception&) {
            throw Error("malformed syllable '" + tok + "' (expected v<vertex>:<element>)");
        }
        if (v < 0 || v >= VertexSet::kCapacity || a < 0 || a > VertexGroup::kMaxOrder) {
            throw Error("syllable '" + tok + "' out of range");
        }
        out.push_back(Syllable{static_cast<std::uint8_t>(v), static_cast<std::uint8_t>(a)});
    }
    return out;
}

std::string format_word(const Word& w) {
    if (w.empty()) return "e";
    std::string out;
    for (Syllable s : w.syllables) {
        if (!out.empty()) out += ' ';
        out += 'v' + std::to_string(s.vertex) + ':' + std::to_string(s.elem);
    }
    return out;
}

void validate_phi_maps(const GraphProduct& source, const GraphProduct& target,
                       const std::vector<std::vector<int>>& maps) {
    const auto& gs = source.graph();
    const auto& gt = target.graph();
    if (gs.size() != gt.size() || gs.edges() != gt.edges()) throw Error("embedding requires the same defining graph");
    if (static_cast<int>(maps.size()) != gs.size()) throw Error("embedding needs one map per vertex");
    for (int v = 0; v < gs.size(); ++v) {
        const auto& m = maps[static_cast<std::size_t>(v)];
        if (static_cast<int>(m.size()) != source.order(v)) {
            throw Error("map at vertex " + std::to_string(v) + " must list an image for every element");
        }
        if (m[0] != 0) throw Error("map at vertex " + std::to_string(v) + " must send the identity to the identity");
        std::vector<bool> seen(static_cast<std::size_t>(target.order(v)), false);
        for (int a = 0; a < source.order(v); ++a) {
            const int b = m[static_cast<std::size_t>(a)];
            if (b < 0 || b >= target.order(v)) throw Error("map at vertex " + std::to_string(v) + " leaves the target group");
            if (a != 0 && b == 0) {
                throw Error("map at vertex " + std::to_string(v) + " sends non-identity element " + std::to_string(a) +
                            " to the identity");
            }
            if (seen[static_cast<std::size_t>(b)]) throw Error("map at vertex " + std::to_string(v) + " is not injective");
            seen[static_cast<std::size_t>(b)] = true;
        }
    }
}

Word embed_phi(const GraphProduct& source, const GraphProduct& target, const std::vector<std::vector<int>>& maps,
               const Word& x) {
    validate_phi_maps(source, target, maps);
    if (x.ambient != 0 && x.ambient != source.id()) throw Error("word belongs to a different graph product");
    const Word nf = x.ambient == source.id() ? x : source.reduce(x.syllables);
    std::vector<Syllable> image;
    image.reserve(nf.size());
    for (Syllable s : nf.syllables) {
        image.push_back(Syllable{s.vertex, static_cast<std::uint8_t>(maps[s.vertex][s.elem])});
    }
    return target.reduce(image);
}

PackedCodec::PackedCodec(const GraphProduct& gp)
    : gp_(&gp), bits_(std::bit_width(static_cast<unsigned>(gp.generators().size()))) {
    if (bits_ == 0) bits_ = 1;
}

PackedWord PackedCodec::encode(const Word& w) const {
    if (w.size() > max_syllables()) {
        throw Error("word of " + std::to_string(w.size()) + " syllables exceeds the packed key capacity of " +
                    std::to_string(max_syllables()));
    }
    PackedWord p{0, 0};
    std::size_t bit = 0;
    for (Syllable s : w.syllables) {
        const auto g = static_cast<std::uint64_t>(gp_->generator_index(s));
        const std::size_t lane = bit / 64;
        const std::size_t off = bit % 64;
        p[lane] |= g << off;
        if (off + static_cast<std::size_t>(bits_) > 64 && lane == 0) p[1] |= g >> (64 - off);
        bit += static_cast<std::size_t>(bits_);
    }
    return p;
}

Word PackedCodec::decode(const PackedWord& p) const {
    std::vector<Syllable> syl;
    const std::uint64_t mask = (std::uint64_t{1} << bits_) - 1;
    const auto& gens = gp_->generators();
    for (std::size_t i = 0; i < max_syllables(); ++i) {
        const std::size_t bit = i * static_cast<std::size_t>(bits_);
        const std::size_t lane = bit / 64;
        const std::size_t off = bit % 64;
        std::uint64_t g = p[lane] >> off;
        if (off + static_cast<std::size_t>(bits_) > 64 && lane == 0) g |= p[1] << (64 - off);
        g &= mask;
        if (g == 0) break;
        syl.push_back(gens[g - 1]);
    }
    Word w;
    w.syllables = std::move(syl);
    w.ambient = gp_->id();
    return w;
}

std::size_t PackedCodec::length(const PackedWord& p) const {
    if (p[0] == 0 && p[1] == 0) return 0;
    const std::size_t top = p[1] != 0 ? 64 + static_cast<std::size_t>(std::bit_width(p[1]))
                                      : static_cast<std::size_t>(std::bit_width(p[0]));
    return (top + static_cast<std::size_t>(bits_) - 1) / static_cast<std::size_t>(bits_);
}

}  // namespace coarsesep
