// SPDX-License-Identifier: Apache-2.0
//
// xlmimo: near-field XL-MIMO channel modelling, analysis and detection
// Copyright (C) 2026 The xlmimo authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef XLMIMO_ERRORS_HPP
#define XLMIMO_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace xlmimo
{
    // Every library failure derives from Error; kind() is the machine-readable tag
    // printed by the CLI on failure.
    class Error : public std::runtime_error
    {
    public:
        Error(const char *kind, const std::string &what) : std::runtime_error(what), kind_(kind) {}
        const char *kind() const noexcept { return kind_; }

    private:
        const char *kind_;
    };

#define XLMIMO_DEFINE_ERROR(Name, tag)                                       \
    class Name : public Error                                                \
    {                                                                        \
    public:                                                                  \
        explicit Name(const std::string &what) : Error(tag, what) {}         \
    };

    XLMIMO_DEFINE_ERROR(DomainError, "domain")
    XLMIMO_DEFINE_ERROR(SingularityError, "singularity")
    XLMIMO_DEFINE_ERROR(UnsupportedConfiguration, "unsupported_configuration")
    XLMIMO_DEFINE_ERROR(SearchFailure, "search_failure")
    XLMIMO_DEFINE_ERROR(DegenerateUser, "degenerate_user")
    XLMIMO_DEFINE_ERROR(DegenerateChannel, "degenerate_channel")
    XLMIMO_DEFINE_ERROR(SingularInterference, "singular_interference")
    XLMIMO_DEFINE_ERROR(UnservableUser, "unservable_user")
    XLMIMO_DEFINE_ERROR(InsufficientAperture, "insufficient_aperture")
    XLMIMO_DEFINE_ERROR(IoError, "io")
    XLMIMO_DEFINE_ERROR(ConfigError, "config")

#undef XLMIMO_DEFINE_ERROR
}

#endif
