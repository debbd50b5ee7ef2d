namespace orbitface {}
