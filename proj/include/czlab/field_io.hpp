#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "czlab/matrix_field.hpp"

namespace czlab {

// JSON form: {"spec": {"d","L","m"}, "cells": [[[re, im], ...], ...]}, cells in
// lexicographic order, entries row-major within a cell.
nlohmann::json field_to_json(const MatrixField& f);
MatrixField field_from_json(const nlohmann::json& j);

// Binary form: 16-byte header "NCMF", u8 d, u8 L, u16 m, u32 reserved x2, then
// little-endian float64 re/im pairs, same ordering as the JSON form.
void write_field_binary(std::ostream& os, const MatrixField& f);
MatrixField read_field_binary(std::istream& is);

void save_field(const std::filesystem::path& path, const MatrixField& f);  // by extension: .json or binary
MatrixField load_field(const std::filesystem::path& path);

}  // namespace czlab
