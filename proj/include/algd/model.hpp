#pragma once

#include <map>
#include <optional>
#include <string>

#include "algd/poisson_pair.hpp"

namespace algd {

/// Schema violation in a model document: carries the offending field.
struct SchemaError : Error {
    std::string field;
    SchemaError(const std::string& fld, const std::string& reason)
        : Error("model field '" + fld + "': " + reason), field(fld) {}
};

/// A loaded model: named, compiled objects over one chart. The document is a
/// JSON object; expression strings use the x0../v0.. variable convention
/// (groupoid blocks use 2n base variables, target slot first).
struct Model {
    std::string name;
    int base_dim = 0;
    int fiber_dim = 0;

    std::optional<LieAlgebroid> algebroid;

    std::map<std::string, SectionA> sections;
    std::map<std::string, DualSection> dual_sections;
    std::map<std::string, ChartVectorField> vector_fields;
    std::map<std::string, ChartOneForm> one_forms;
    std::map<std::string, Bivector> bivectors;
    std::map<std::string, GroupoidField> groupoid_fields;

    struct PoissonPairDecl {
        std::string bivector;
        std::map<std::string, GroupoidOneForm> star_one_forms;
    };
    std::optional<PoissonPairDecl> poisson_pair;

    const Bivector& bivector_named(const std::string& nm) const;
};

Model load_model(const std::string& text, const std::string& name = "");
Model load_model_file(const std::string& path);

} // namespace algd
