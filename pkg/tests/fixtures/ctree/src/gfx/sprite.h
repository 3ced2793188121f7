/* sprite.h */
#ifndef SRC_GFX_SPRITE_H
#define SRC_GFX_SPRITE_H

#include "texture.h"

#endif /* SRC_GFX_SPRITE_H */
