#pragma once

#include "cinfty/graded.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <span>
#include <sstream>
#include <vector>

namespace cinfty {

// Sign of permuting homogeneous elements with the given degrees.
// `permutation` lists, per output position, which input goes there
// (0-based). The sign is (-1)^{sum |a_i||a_j|} over all inversions.
inline Scalar koszul_sign(const std::vector<std::size_t>& permutation,
                          const std::vector<int>& degrees) {
    if (permutation.size() != degrees.size()) {
        throw std::invalid_argument("koszul_sign: permutation/degree length mismatch");
    }
    std::vector<bool> seen(permutation.size(), false);
    for (std::size_t p : permutation) {
        if (p >= permutation.size() || seen[p]) {
            throw std::invalid_argument("koszul_sign: not a permutation");
        }
        seen[p] = true;
    }
    long exponent = 0;
    for (std::size_t i = 0; i < permutation.size(); ++i) {
        for (std::size_t j = i + 1; j < permutation.size(); ++j) {
            if (permutation[i] > permutation[j]) {
                exponent += static_cast<long>(degrees[permutation[i]]) * degrees[permutation[j]];
            }
        }
    }
    return (exponent % 2 == 0) ? Scalar(1) : Scalar(-1);
}

// Sparse element of a tensor power, keyed by tuples of basis names.
struct TensorVector {
    ModulePtr module;  // all factors share one module
    std::size_t arity = 0;
    std::map<std::vector<std::string>, Scalar> coeffs;

    void add(const std::vector<std::string>& word, const Scalar& c) {
        if (c == 0) return;
        auto it = coeffs.find(word);
        if (it == coeffs.end()) {
            coeffs[word] = c;
        } else {
            it->second += c;
            if (it->second == 0) coeffs.erase(it);
        }
    }
    bool is_zero() const { return coeffs.empty(); }
};

// Arity-k multilinear map with sparse coefficient table over basis tuples.
// Maps are identified with their basis-tuple values; Koszul signs enter
// only through tensor_apply / compose_at / the Hom-complex boundary.
class MultilinearMap {
public:
    MultilinearMap() = default;
    MultilinearMap(ModulePtr source, ModulePtr target, std::size_t arity, int degree)
        : source_(std::move(source)), target_(std::move(target)), arity_(arity), degree_(degree) {
        if (arity_ < 1) throw std::invalid_argument("multilinear map arity must be >= 1");
    }

    static MultilinearMap identity(const ModulePtr& module) {
        MultilinearMap id(module, module, 1, 0);
        for (const auto& b : module->basis()) {
            id.set_entry({b.name}, Vector::basis(module, b.name));
        }
        return id;
    }

    static MultilinearMap zero(const ModulePtr& source, const ModulePtr& target,
                               std::size_t arity, int degree) {
        return MultilinearMap(source, target, arity, degree);
    }

    const ModulePtr& source() const { return source_; }
    const ModulePtr& target() const { return target_; }
    std::size_t arity() const { return arity_; }
    int degree() const { return degree_; }
    const std::map<std::vector<std::string>, Vector>& entries() const { return table_; }

    void set_entry(const std::vector<std::string>& inputs, const Vector& image) {
        validate_inputs(inputs);
        if (image.is_zero()) {
            table_.erase(inputs);
            return;
        }
        if (image.module() && !(*image.module() == *target_)) {
            throw std::invalid_argument("entry image lies in the wrong module");
        }
        int want = degree_;
        for (const auto& n : inputs) want += source_->degree_of(n);
        auto got = image.homogeneous_degree();
        if (!got || *got != want) {
            throw std::invalid_argument("entry image is not homogeneous of degree " +
                                        std::to_string(want));
        }
        table_[inputs] = image;
    }

    void add_entry(const std::vector<std::string>& inputs, const Vector& image) {
        if (image.is_zero()) return;
        auto it = table_.find(inputs);
        if (it == table_.end()) {
            set_entry(inputs, image);
        } else {
            it->second += image;
            if (it->second.is_zero()) table_.erase(it);
        }
    }

    Vector value(const std::vector<std::string>& inputs) const {
        auto it = table_.find(inputs);
        if (it != table_.end()) return it->second;
        return Vector(target_);
    }

    // Pointer to the stored image, or nullptr when the entry is zero;
    // avoids copying in inner loops.
    const Vector* find_entry(const std::vector<std::string>& inputs) const {
        auto it = table_.find(inputs);
        return it == table_.end() ? nullptr : &it->second;
    }

    // Multilinear evaluation; no signs beyond the stored table.
    Vector apply(std::span<const Vector> args) const {
        if (args.size() != arity_) {
            throw std::invalid_argument("apply: expected " + std::to_string(arity_) +
                                        " arguments, got " + std::to_string(args.size()));
        }
        Vector out(target_);
        std::vector<std::string> word(arity_);
        std::function<void(std::size_t, Scalar)> rec = [&](std::size_t slot, Scalar coeff) {
            if (slot == arity_) {
                auto it = table_.find(word);
                if (it != table_.end()) out += coeff * it->second;
                return;
            }
            for (const auto& [name, c] : args[slot].coeffs()) {
                word[slot] = name;
                rec(slot + 1, coeff * c);
            }
        };
        rec(0, Scalar(1));
        return out;
    }

    Vector apply(std::initializer_list<Vector> args) const {
        std::vector<Vector> v(args);
        return apply(std::span<const Vector>(v));
    }

    bool same_signature(const MultilinearMap& other) const {
        return arity_ == other.arity_ && degree_ == other.degree_ &&
               *source_ == *other.source_ && *target_ == *other.target_;
    }

    MultilinearMap& operator+=(const MultilinearMap& other) {
        require_signature(other, "map addition");
        for (const auto& [inputs, image] : other.table_) add_entry(inputs, image);
        return *this;
    }

    MultilinearMap& operator-=(const MultilinearMap& other) {
        require_signature(other, "map subtraction");
        for (const auto& [inputs, image] : other.table_) add_entry(inputs, Scalar(-1) * image);
        return *this;
    }

    MultilinearMap& operator*=(const Scalar& s) {
        if (s == 0) {
            table_.clear();
        } else {
            for (auto& [inputs, image] : table_) image *= s;
        }
        return *this;
    }

    friend MultilinearMap operator+(MultilinearMap a, const MultilinearMap& b) { return a += b; }
    friend MultilinearMap operator-(MultilinearMap a, const MultilinearMap& b) { return a -= b; }
    friend MultilinearMap operator*(const Scalar& s, MultilinearMap m) { return m *= s; }

    bool operator==(const MultilinearMap& other) const {
        return same_signature(other) && table_ == other.table_;
    }

    bool is_zero() const { return table_.empty(); }

    // First nonzero basis tuple, as a defect witness.
    std::optional<std::vector<std::string>> first_nonzero_inputs() const {
        if (table_.empty()) return std::nullopt;
        return table_.begin()->first;
    }

private:
    void validate_inputs(const std::vector<std::string>& inputs) const {
        if (inputs.size() != arity_) {
            throw std::invalid_argument("entry tuple has wrong arity");
        }
        for (const auto& n : inputs) source_->index_of(n);
    }

    void require_signature(const MultilinearMap& other, const char* what) const {
        if (!same_signature(other)) {
            throw std::invalid_argument(std::string(what) + ": signature mismatch");
        }
    }

    ModulePtr source_;
    ModulePtr target_;
    std::size_t arity_ = 1;
    int degree_ = 0;
    std::map<std::vector<std::string>, Vector> table_;
};

inline bool map_equal(const MultilinearMap& a, const MultilinearMap& b) { return a == b; }

// Enumerates all basis-name tuples of the given arity, lexicographically.
inline std::vector<std::vector<std::string>> basis_tuples(const GradedModule& module,
                                                          std::size_t arity) {
    std::vector<std::vector<std::string>> out;
    std::vector<std::string> word(arity);
    std::function<void(std::size_t)> rec = [&](std::size_t slot) {
        if (slot == arity) {
            out.push_back(word);
            return;
        }
        for (const auto& b : module.basis()) {
            word[slot] = b.name;
            rec(slot + 1);
        }
    };
    rec(0);
    return out;
}

// (f_1 x ... x f_k)(v_1 x ... x v_k) with the Koszul sign
// (-1)^{sum_{j<i} |f_i||v_j|} on each basis term.
inline TensorVector tensor_apply(const std::vector<MultilinearMap>& maps,
                                 const std::vector<Vector>& inputs) {
    if (maps.size() != inputs.size()) {
        throw std::invalid_argument("tensor_apply: list length mismatch");
    }
    for (std::size_t i = 0; i < maps.size(); ++i) {
        if (maps[i].arity() != 1) {
            throw std::invalid_argument("tensor_apply: all maps must have arity 1");
        }
        if (inputs[i].module() && !(*maps[i].source() == *inputs[i].module())) {
            throw std::invalid_argument("tensor_apply: module mismatch at slot " +
                                        std::to_string(i));
        }
    }
    TensorVector out;
    out.arity = maps.size();
    if (!maps.empty()) out.module = maps.front().target();

    std::vector<std::string> in_word(maps.size());
    std::function<void(std::size_t, Scalar)> rec = [&](std::size_t slot, Scalar coeff) {
        if (slot == maps.size()) {
            // Sign from moving each f_i past the inputs before it.
            long exponent = 0;
            for (std::size_t i = 0; i < maps.size(); ++i) {
                if (maps[i].degree() % 2 == 0) continue;
                for (std::size_t j = 0; j < i; ++j) {
                    exponent += maps[j].source()->degree_of(in_word[j]);
                }
            }
            Scalar sign = (exponent % 2 == 0) ? 1 : -1;
            // Expand the product of image vectors.
            std::vector<Vector> images(maps.size());
            for (std::size_t i = 0; i < maps.size(); ++i) {
                images[i] = maps[i].value({in_word[i]});
            }
            std::vector<std::string> out_word(maps.size());
            std::function<void(std::size_t, Scalar)> expand = [&](std::size_t s, Scalar c) {
                if (s == maps.size()) {
                    out.add(out_word, c);
                    return;
                }
                for (const auto& [name, ic] : images[s].coeffs()) {
                    out_word[s] = name;
                    expand(s + 1, c * ic);
                }
            };
            expand(0, coeff * sign);
            return;
        }
        for (const auto& [name, c] : inputs[slot].coeffs()) {
            in_word[slot] = name;
            rec(slot + 1, coeff * c);
        }
    };
    rec(0, Scalar(1));
    return out;
}

// f composed with g in the given slot (1-based):
// (f o_slot g)(a_1,...) = (-1)^{|g|(|a_1|+...+|a_{slot-1}|)}
//                         f(a_1,..., g(a_slot,...), ...).
inline MultilinearMap compose_at(const MultilinearMap& outer, const MultilinearMap& inner,
                                 std::size_t slot) {
    if (!(*inner.target() == *outer.source())) {
        throw std::invalid_argument("compose_at: inner target does not match outer source");
    }
    if (slot < 1 || slot > outer.arity()) {
        throw std::invalid_argument("compose_at: slot out of range");
    }
    if (!(*inner.source() == *outer.source())) {
        // Mixed-source composites are representable only when all slots agree.
        throw std::invalid_argument("compose_at: inner source must equal outer source");
    }
    std::size_t arity = outer.arity() + inner.arity() - 1;
    MultilinearMap result(outer.source(), outer.target(), arity,
                          outer.degree() + inner.degree());
    const auto& module = *outer.source();
    // Support-driven: route each outer entry through the preimages of its
    // slot input under inner, instead of scanning the full tuple domain.
    std::map<std::string, std::vector<std::pair<const std::vector<std::string>*, Scalar>>> pre;
    for (const auto& [word, image] : inner.entries()) {
        for (const auto& [name, c] : image.coeffs()) pre[name].emplace_back(&word, c);
    }
    const bool odd_inner = inner.degree() % 2 != 0;
    for (const auto& [oword, oimage] : outer.entries()) {
        auto it = pre.find(oword[slot - 1]);
        if (it == pre.end()) continue;
        long prefix_degree = 0;
        for (std::size_t j = 0; j + 1 < slot; ++j) prefix_degree += module.degree_of(oword[j]);
        Scalar sign = (odd_inner && prefix_degree % 2 != 0) ? -1 : 1;
        for (const auto& [iword, c] : it->second) {
            std::vector<std::string> tuple;
            tuple.reserve(arity);
            tuple.insert(tuple.end(), oword.begin(), oword.begin() + (slot - 1));
            tuple.insert(tuple.end(), iword->begin(), iword->end());
            tuple.insert(tuple.end(), oword.begin() + slot, oword.end());
            result.add_entry(tuple, (sign * c) * oimage);
        }
    }
    return result;
}

// outer o (g_1 x ... x g_k), where the g_i share a source module and their
// common target is outer's source. Koszul sign per basis term:
// (-1)^{sum_j |g_j| * (total degree of the inputs routed to g_1..g_{j-1})}.
inline MultilinearMap compose_multi(const MultilinearMap& outer,
                                    const std::vector<MultilinearMap>& inners) {
    if (inners.empty() || inners.size() != outer.arity()) {
        throw std::invalid_argument("compose_multi: need one inner map per outer slot");
    }
    const ModulePtr& src = inners.front().source();
    std::size_t arity = 0;
    int degree = outer.degree();
    for (const auto& g : inners) {
        if (!(*g.source() == *src)) {
            throw std::invalid_argument("compose_multi: inner maps must share a source");
        }
        if (!(*g.target() == *outer.source())) {
            throw std::invalid_argument("compose_multi: inner target mismatch");
        }
        arity += g.arity();
        degree += g.degree();
    }
    MultilinearMap result(src, outer.target(), arity, degree);
    // Support-driven: for each outer entry, combine the preimages of its
    // inputs under the inner maps. The Koszul sign moves each g_j past the
    // inputs routed to earlier blocks, exactly as in the dense formula.
    const std::size_t k = inners.size();
    std::vector<std::map<std::string, std::vector<std::pair<const std::vector<std::string>*, Scalar>>>>
        pre(k);
    for (std::size_t j = 0; j < k; ++j) {
        for (const auto& [word, image] : inners[j].entries()) {
            for (const auto& [name, c] : image.coeffs()) pre[j][name].emplace_back(&word, c);
        }
    }
    std::vector<bool> odd(k);
    std::vector<std::size_t> block_start(k);
    for (std::size_t j = 0, off = 0; j < k; off += inners[j].arity(), ++j) {
        odd[j] = inners[j].degree() % 2 != 0;
        block_start[j] = off;
    }
    std::vector<std::string> tuple(arity);
    for (const auto& [oword, oimage] : outer.entries()) {
        bool dead = false;
        std::vector<const std::vector<std::pair<const std::vector<std::string>*, Scalar>>*> lists(k);
        for (std::size_t j = 0; j < k; ++j) {
            auto it = pre[j].find(oword[j]);
            if (it == pre[j].end()) {
                dead = true;
                break;
            }
            lists[j] = &it->second;
        }
        if (dead) continue;
        std::function<void(std::size_t, Scalar, long)> rec = [&](std::size_t j, Scalar coeff,
                                                                 long prefix_degree) {
            if (j == k) {
                result.add_entry(tuple, coeff * oimage);
                return;
            }
            for (const auto& [iword, c] : *lists[j]) {
                std::copy(iword->begin(), iword->end(), tuple.begin() + block_start[j]);
                long block_degree = 0;
                for (const auto& name : *iword) block_degree += src->degree_of(name);
                Scalar next = coeff * c;
                if (odd[j] && prefix_degree % 2 != 0) next = -next;
                rec(j + 1, next, prefix_degree + block_degree);
            }
        };
        rec(0, Scalar(1), 0);
    }
    return result;
}

// Plain composition g o f for arity-1 g.
inline MultilinearMap compose(const MultilinearMap& g, const MultilinearMap& f) {
    if (g.arity() != 1) throw std::invalid_argument("compose: outer map must have arity 1");
    if (!(*f.target() == *g.source())) {
        throw std::invalid_argument("compose: target/source mismatch");
    }
    MultilinearMap result(f.source(), g.target(), f.arity(), f.degree() + g.degree());
    for (const auto& [inputs, image] : f.entries()) {
        Vector out = g.apply({image});
        if (!out.is_zero()) result.add_entry(inputs, out);
    }
    return result;
}

}  // namespace cinfty
