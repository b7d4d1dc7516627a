#pragma once

#include "wallkit/cartan.hpp"
#include "wallkit/convention.hpp"
#include "wallkit/dimension.hpp"
#include "wallkit/errors.hpp"
#include "wallkit/fock.hpp"
#include "wallkit/laurent.hpp"
#include "wallkit/parallel.hpp"
#include "wallkit/tableau.hpp"
#include "wallkit/wall.hpp"
