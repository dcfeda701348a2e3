#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace qde {

/**
 * @brief Immutable, shared table of symbolic variable names.
 *
 * A Laurent polynomial stores exponents positionally; the table gives the
 * positions meaning. Tables are value-compared (two tables with the same
 * name list are interchangeable), but sharing one shared_ptr is the fast path.
 */
class VarTable {
  public:
    static std::shared_ptr<const VarTable> make(std::vector<std::string> names) {
        return std::shared_ptr<const VarTable>(new VarTable(std::move(names)));
    }

    std::size_t size() const { return names_.size(); }
    const std::string& name(std::size_t i) const { return names_.at(i); }
    const std::vector<std::string>& names() const { return names_; }

    /// Index of a name; throws if absent.
    std::size_t index(const std::string& n) const {
        auto it = idx_.find(n);
        if (it == idx_.end()) throw std::domain_error("VarTable: unknown variable '" + n + "'");
        return it->second;
    }

    bool has(const std::string& n) const { return idx_.count(n) != 0; }

    bool same_as(const VarTable& o) const { return this == &o || names_ == o.names_; }

    /// New table with extra names appended (existing indices preserved).
    std::shared_ptr<const VarTable> extended(const std::vector<std::string>& extra) const {
        std::vector<std::string> all = names_;
        for (const auto& n : extra) {
            if (has(n)) throw std::domain_error("VarTable: duplicate variable '" + n + "'");
            all.push_back(n);
        }
        return make(std::move(all));
    }

  private:
    explicit VarTable(std::vector<std::string> names) : names_(std::move(names)) {
        for (std::size_t i = 0; i < names_.size(); ++i) {
            if (!idx_.emplace(names_[i], i).second)
                throw std::domain_error("VarTable: duplicate variable '" + names_[i] + "'");
        }
    }
    std::vector<std::string> names_;
    std::map<std::string, std::size_t> idx_;
};

using VarTablePtr = std::shared_ptr<const VarTable>;

}  // namespace qde
