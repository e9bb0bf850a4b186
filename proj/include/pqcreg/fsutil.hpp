// Copyright 2026 The pqcreg developers
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

#pragma once

#include "pqcreg/errors.hpp"

#include <filesystem>
#include <fstream>
#include <string>

#include <unistd.h>

namespace pqcreg {

/// Write content to a sibling temp file and rename it into place, so an
/// interrupted run never leaves a partially written output.
inline void atomic_write_text(const std::filesystem::path &path,
                              const std::string &content) {
    namespace fs = std::filesystem;
    if (path.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(path.parent_path(), ec);
    }
    const fs::path tmp = path.string() + ".tmp" +
                         std::to_string(static_cast<unsigned long>(::getpid()));
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw Error(ErrorKind::Io,
                        "cannot open \"" + tmp.string() + "\" for writing");
        }
        out << content;
        if (!out.good()) {
            throw Error(ErrorKind::Io, "failed writing \"" + tmp.string() + "\"");
        }
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw Error(ErrorKind::Io,
                    "cannot move output into place at \"" + path.string() +
                        "\"");
    }
}

} // namespace pqcreg
