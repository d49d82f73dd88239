// Copyright 2026 The condbisim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CONDBISIM_MODEL_IO_HPP_
#define CONDBISIM_MODEL_IO_HPP_

#include <string>
#include <string_view>
#include <variant>

#include "condbisim/models.hpp"

namespace condbisim {

enum class ModelKind { kCts, kLats, kFts };

using Model = std::variant<Cts, Lats, Fts>;

ModelKind kind_of(const Model& m);
std::string_view kind_name(ModelKind k);
/// "cts", "lats" or "fts"; throws ValidationError otherwise.
ModelKind parse_kind(std::string_view name);

/// Reads a model from its JSON text. Problems are reported as ParseError
/// (or a validation error) whose message starts with the offending field,
/// e.g. `transitions[3].guard: unknown condition 'c'`.
///
/// CTS guards list the maximal enabling conditions and are closed
/// downwards. LaTS guards must already be downward-closed unless `policy`
/// is kClose. FTS guards are feature expressions and are kept verbatim.
Model parse_model(std::string_view text, GuardPolicy policy = GuardPolicy::kReject);
Model load_model(const std::string& path, GuardPolicy policy = GuardPolicy::kReject);

/// Pretty-printed JSON that parse_model reads back to an equal model.
std::string dump_model(const Model& m);

/// Converts between kinds: cts ↔ lats, and fts → lats/cts. Converting to
/// fts is not defined and raises ValidationError.
Model convert(const Model& m, ModelKind target, GuardPolicy policy = GuardPolicy::kReject);

}  // namespace condbisim

#endif  // CONDBISIM_MODEL_IO_HPP_
