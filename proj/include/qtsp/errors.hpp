// Copyright 2026 The qtsp Authors
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace qtsp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
    using std::runtime_error::runtime_error;
};

/// A vector or index does not match the dimension of the model it is used with.
class DimensionError : public Error {
 public:
    using Error::Error;
};

/// A problem is larger than an exact method's configured cap.
class SizeError : public Error {
 public:
    using Error::Error;
};

/// A precondition on an argument was violated.
class ContractError : public Error {
 public:
    using Error::Error;
};

/// A constraint cannot be satisfied by any assignment.
class InfeasibleError : public Error {
 public:
    using Error::Error;
};

class IoError : public Error {
 public:
    IoError(const std::string& path, const std::string& what)
            : Error(path + ": " + what), path_(path) {}

    const std::string& path() const noexcept { return path_; }

 private:
    std::string path_;
};

}  // namespace qtsp
