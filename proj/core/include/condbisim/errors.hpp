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

#ifndef CONDBISIM_ERRORS_HPP_
#define CONDBISIM_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace condbisim {

// Base of every error raised by the library. Commands map these to exit 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define CONDBISIM_DEFINE_ERROR(Name)  \
  class Name : public Error {         \
   public:                            \
    using Error::Error;               \
  };

CONDBISIM_DEFINE_ERROR(CycleError)
CONDBISIM_DEFINE_ERROR(UnknownElement)
CONDBISIM_DEFINE_ERROR(PosetMismatch)
CONDBISIM_DEFINE_ERROR(UnknownFeature)
CONDBISIM_DEFINE_ERROR(ManagerMismatch)
CONDBISIM_DEFINE_ERROR(PreconditionViolation)
CONDBISIM_DEFINE_ERROR(GuardNotDownwardClosed)
CONDBISIM_DEFINE_ERROR(UnknownCondition)
CONDBISIM_DEFINE_ERROR(DimensionMismatch)
CONDBISIM_DEFINE_ERROR(ModelMismatch)
CONDBISIM_DEFINE_ERROR(PrecedenceMismatch)
CONDBISIM_DEFINE_ERROR(SafeguardExceeded)
CONDBISIM_DEFINE_ERROR(CapExceeded)
CONDBISIM_DEFINE_ERROR(NotWinnable)
CONDBISIM_DEFINE_ERROR(IllegalMove)
CONDBISIM_DEFINE_ERROR(ParseError)
CONDBISIM_DEFINE_ERROR(ValidationError)
CONDBISIM_DEFINE_ERROR(DeadlineExceeded)

#undef CONDBISIM_DEFINE_ERROR

}  // namespace condbisim

#endif  // CONDBISIM_ERRORS_HPP_
