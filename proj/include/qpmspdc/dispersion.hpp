#pragma once

// Extraordinary refractive index of the nonlinear medium from a data-driven
// Sellmeier coefficient set.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "format.hpp"
#include "keyvalue.hpp"

namespace qpmspdc {

/// Functional forms, wavelength `l` in micrometres.
enum class SellmeierForm {
    /// n^2 = A + B / (l^2 - C) - D l^2
    handbook_ir_pole,
    /// n^2 = 1 + sum_{k=1..3} B_k l^2 / (l^2 - C_k), coefficients ordered B1, C1, B2, C2, B3, C3
    sellmeier_3pole,
};

constexpr std::size_t form_arity(SellmeierForm form) noexcept {
    switch (form) {
    case SellmeierForm::handbook_ir_pole: return 4;
    case SellmeierForm::sellmeier_3pole: return 6;
    }
    return 0;
}

constexpr std::string_view form_id(SellmeierForm form) noexcept {
    switch (form) {
    case SellmeierForm::handbook_ir_pole: return "handbook_ir_pole";
    case SellmeierForm::sellmeier_3pole: return "sellmeier_3pole";
    }
    return "";
}

inline std::optional<SellmeierForm> form_from_id(std::string_view id) noexcept {
    for (auto f : {SellmeierForm::handbook_ir_pole, SellmeierForm::sellmeier_3pole})
        if (form_id(f) == id) return f;
    return std::nullopt;
}

struct WavelengthRange {
    double min_nm = 0.0;
    double max_nm = 0.0;

    bool contains(double lambda_nm) const noexcept { return lambda_nm >= min_nm && lambda_nm <= max_nm; }
};

struct SellmeierModel {
    std::string name;
    SellmeierForm form = SellmeierForm::handbook_ir_pole;
    std::vector<double> coefficients;
    WavelengthRange valid_range;
    std::string source;
};

inline bool operator==(const WavelengthRange& a, const WavelengthRange& b) noexcept {
    return a.min_nm == b.min_nm && a.max_nm == b.max_nm;
}

inline bool operator==(const SellmeierModel& a, const SellmeierModel& b) noexcept {
    return a.name == b.name && a.form == b.form && a.coefficients == b.coefficients &&
           a.valid_range == b.valid_range && a.source == b.source;
}

namespace detail {

inline double index_squared(const SellmeierModel& model, double lambda_nm) noexcept {
    const double l2 = (lambda_nm * 1e-3) * (lambda_nm * 1e-3);
    const auto& c = model.coefficients;
    switch (model.form) {
    case SellmeierForm::handbook_ir_pole:
        return c[0] + c[1] / (l2 - c[2]) - c[3] * l2;
    case SellmeierForm::sellmeier_3pole:
        return 1.0 + c[0] * l2 / (l2 - c[1]) + c[2] * l2 / (l2 - c[3]) + c[4] * l2 / (l2 - c[5]);
    }
    return 0.0;
}

} // namespace detail

/// n_e at a vacuum wavelength in nm. Throws InputError for non-finite input and
/// RangeError naming the violated bound outside the model's validity window.
inline double refractive_index(const SellmeierModel& model, double lambda_nm) {
    if (!std::isfinite(lambda_nm))
        throw InputError("refractive_index: wavelength is not finite");
    if (lambda_nm < model.valid_range.min_nm)
        throw RangeError("refractive_index(" + model.name + "): " + format_number(lambda_nm) +
                         " nm is below the valid_range minimum " + format_number(model.valid_range.min_nm) + " nm");
    if (lambda_nm > model.valid_range.max_nm)
        throw RangeError("refractive_index(" + model.name + "): " + format_number(lambda_nm) +
                         " nm is above the valid_range maximum " + format_number(model.valid_range.max_nm) + " nm");
    return std::sqrt(detail::index_squared(model, lambda_nm));
}

/// Validates arity, window bounds and the (1, 4) index corridor (checked on a
/// 1 nm grid across the window).
inline SellmeierModel make_sellmeier(std::string name, SellmeierForm form, std::vector<double> coefficients,
                                     WavelengthRange range, std::string source) {
    if (coefficients.size() != form_arity(form))
        throw ArityError("sellmeier `" + name + "`: form `" + std::string(form_id(form)) + "` takes " +
                         std::to_string(form_arity(form)) + " coefficients, got " +
                         std::to_string(coefficients.size()));
    for (double c : coefficients)
        if (!std::isfinite(c)) throw InputError("sellmeier `" + name + "`: non-finite coefficient");
    if (!(range.min_nm < range.max_nm))
        throw InputError("sellmeier `" + name + "`: valid_range minimum must be below maximum");
    if (range.min_nm < 300.0 || range.max_nm > 5000.0)
        throw InputError("sellmeier `" + name + "`: valid_range must lie within 300-5000 nm");

    SellmeierModel model{std::move(name), form, std::move(coefficients), range, std::move(source)};
    for (double l = range.min_nm;; l = std::min(l + 1.0, range.max_nm)) {
        const double n2 = detail::index_squared(model, l);
        if (!(n2 > 1.0 && n2 < 16.0))
            throw InputError("sellmeier `" + model.name + "`: index leaves (1, 4) at " + format_number(l) + " nm");
        if (l == range.max_nm) break;
    }
    return model;
}

inline SellmeierModel parse_sellmeier(std::string_view text, std::string origin = "<string>") {
    const auto file = KeyValueFile::parse(text, std::move(origin));
    const auto& name = file.require("name");
    const auto& form_entry = file.require("form_id");
    const auto& coeff_entry = file.require("coefficients");
    const auto& range_entry = file.require("valid_range_nm");
    const auto& source = file.require("source");

    const auto form = form_from_id(form_entry.value);
    if (!form) throw ParseError(file.context(form_entry) + ": unknown form `" + form_entry.value + "`");

    auto coefficients = file.reals(coeff_entry);
    if (coefficients.size() != form_arity(*form))
        throw ArityError(file.context(coeff_entry) + ": form `" + form_entry.value + "` takes " +
                         std::to_string(form_arity(*form)) + " coefficients, got " +
                         std::to_string(coefficients.size()));

    const auto bounds = file.reals(range_entry);
    if (bounds.size() != 2)
        throw ParseError(file.context(range_entry) + ": expected two comma-separated reals");

    return make_sellmeier(name.value, *form, std::move(coefficients), {bounds[0], bounds[1]}, source.value);
}

inline SellmeierModel load_sellmeier(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open sellmeier file `" + path.string() + "`");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_sellmeier(buf.str(), path.string());
}

/// Built-in copy of data/ppln_e_handbook.sellmeier.
inline SellmeierModel congruent_lithium_niobate() {
    return make_sellmeier("ppln_e", SellmeierForm::handbook_ir_pole, {4.5820, 0.099169, 0.04443, 0.02195},
                          {400.0, 5000.0},
                          "V. G. Dmitriev, G. G. Gurzadyan, D. N. Nikogosyan, Handbook of Nonlinear Optical "
                          "Crystals, 3rd ed. (Springer, 1999), congruent LiNbO3, e-wave");
}

} // namespace qpmspdc
