#pragma once

#include "cinfty/rational.hpp"

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cinfty {

// Finite-dimensional graded vector space over Q with a named basis.
// Cohomological grading: differentials downstream have degree +1.
class GradedModule {
public:
    struct BasisElement {
        std::string name;
        int degree = 0;
    };

    GradedModule() = default;
    GradedModule(std::string name, std::vector<BasisElement> basis)
        : name_(std::move(name)), basis_(std::move(basis)) {
        for (std::size_t i = 0; i < basis_.size(); ++i) {
            auto [it, fresh] = index_.emplace(basis_[i].name, i);
            if (!fresh) {
                throw std::invalid_argument("duplicate basis name '" + basis_[i].name +
                                            "' in module '" + name_ + "'");
            }
        }
    }

    const std::string& name() const { return name_; }
    const std::vector<BasisElement>& basis() const { return basis_; }
    std::size_t dim() const { return basis_.size(); }

    bool has(const std::string& basis_name) const { return index_.count(basis_name) > 0; }

    std::size_t index_of(const std::string& basis_name) const {
        auto it = index_.find(basis_name);
        if (it == index_.end()) {
            throw std::invalid_argument("unknown basis element '" + basis_name +
                                        "' in module '" + name_ + "'");
        }
        return it->second;
    }

    int degree_of(const std::string& basis_name) const {
        return basis_[index_of(basis_name)].degree;
    }

    std::vector<std::string> names_in_degree(int degree) const {
        std::vector<std::string> out;
        for (const auto& b : basis_) {
            if (b.degree == degree) out.push_back(b.name);
        }
        return out;
    }

    int min_degree() const {
        int d = 0;
        bool first = true;
        for (const auto& b : basis_) {
            if (first || b.degree < d) d = b.degree;
            first = false;
        }
        return d;
    }

    int max_degree() const {
        int d = 0;
        bool first = true;
        for (const auto& b : basis_) {
            if (first || b.degree > d) d = b.degree;
            first = false;
        }
        return d;
    }

    bool operator==(const GradedModule& other) const {
        if (name_ != other.name_ || basis_.size() != other.basis_.size()) return false;
        for (std::size_t i = 0; i < basis_.size(); ++i) {
            if (basis_[i].name != other.basis_[i].name ||
                basis_[i].degree != other.basis_[i].degree)
                return false;
        }
        return true;
    }

private:
    std::string name_;
    std::vector<BasisElement> basis_;
    std::map<std::string, std::size_t> index_;
};

using ModulePtr = std::shared_ptr<const GradedModule>;

// Sparse vector tagged with its parent module. Zero coefficients are never
// stored; mutating operations prune them eagerly.
class Vector {
public:
    Vector() = default;
    explicit Vector(ModulePtr module) : module_(std::move(module)) {}

    static Vector basis(const ModulePtr& module, const std::string& name) {
        module->index_of(name);  // validates
        Vector v(module);
        v.coeffs_[name] = 1;
        return v;
    }

    const ModulePtr& module() const { return module_; }
    const std::map<std::string, Scalar>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }

    Scalar coeff(const std::string& name) const {
        auto it = coeffs_.find(name);
        return it == coeffs_.end() ? Scalar(0) : it->second;
    }

    void set(const std::string& name, Scalar value) {
        module_->index_of(name);
        if (value == 0) {
            coeffs_.erase(name);
        } else {
            coeffs_[name] = std::move(value);
        }
    }

    void add(const std::string& name, const Scalar& value) {
        if (value == 0) return;
        auto it = coeffs_.find(name);
        if (it == coeffs_.end()) {
            module_->index_of(name);
            coeffs_[name] = value;
        } else {
            it->second += value;
            if (it->second == 0) coeffs_.erase(it);
        }
    }

    Vector& operator+=(const Vector& other) {
        require_same_module(other);
        if (!module_) module_ = other.module_;
        for (const auto& [name, c] : other.coeffs_) add(name, c);
        return *this;
    }

    Vector& operator-=(const Vector& other) {
        require_same_module(other);
        if (!module_) module_ = other.module_;
        for (const auto& [name, c] : other.coeffs_) add(name, -c);
        return *this;
    }

    Vector& operator*=(const Scalar& s) {
        if (s == 0) {
            coeffs_.clear();
        } else {
            for (auto& [name, c] : coeffs_) c *= s;
        }
        return *this;
    }

    friend Vector operator+(Vector a, const Vector& b) { return a += b; }
    friend Vector operator-(Vector a, const Vector& b) { return a -= b; }
    friend Vector operator*(const Scalar& s, Vector v) { return v *= s; }

    bool operator==(const Vector& other) const { return coeffs_ == other.coeffs_; }

    // Degree of a homogeneous vector; nullopt for zero or mixed degrees.
    std::optional<int> homogeneous_degree() const {
        std::optional<int> deg;
        for (const auto& [name, c] : coeffs_) {
            int d = module_->degree_of(name);
            if (deg && *deg != d) return std::nullopt;
            deg = d;
        }
        return deg;
    }

private:
    void require_same_module(const Vector& other) const {
        if (module_ && other.module_ && !(*module_ == *other.module_)) {
            throw std::invalid_argument("vector module mismatch: '" + module_->name() +
                                        "' vs '" + other.module_->name() + "'");
        }
    }

    ModulePtr module_;
    std::map<std::string, Scalar> coeffs_;
};

}  // namespace cinfty
