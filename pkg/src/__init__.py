# mzsphere - MZ weighted least squares workbench on S²
